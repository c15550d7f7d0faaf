#include "smvd/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace smvd {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json metric_json(const Metric& m) {
  if (m.is_euclidean()) return {{"kind", "euclidean"}};
  json v = json::array();
  for (Point p : m.unit_ball().vertices) v.push_back(point_json(p));
  return {{"kind", "polygon"}, {"vertices", v}};
}

Metric metric_from(const json& j, const Tolerances& tol) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return Metric::euclidean();
  if (kind != "polygon") parse_error("unknown metric kind '" + kind + "'");
  std::vector<Point> v;
  for (const json& p : j.at("vertices")) v.push_back(point_from(p));
  return Metric::polygonal(std::move(v), tol);
}

json tol_json(const Tolerances& t) {
  return {{"eps_join", t.eps_join}, {"eps_unit", t.eps_unit}, {"eps_area_rel", t.eps_area_rel},
          {"eps_radius_rel", t.eps_radius_rel}};
}

Tolerances tol_from(const json& j) {
  Tolerances t;
  t.eps_join = j.value("eps_join", t.eps_join);
  t.eps_unit = j.value("eps_unit", t.eps_unit);
  t.eps_area_rel = j.value("eps_area_rel", t.eps_area_rel);
  t.eps_radius_rel = j.value("eps_radius_rel", t.eps_radius_rel);
  return t;
}

json edge_json(const Edge& e) {
  json tag = json::array({static_cast<int>(e.tag.kind), e.tag.a, e.tag.b});
  if (e.is_arc()) {
    const Arc& a = e.arc();
    return {{"arc", json::array({a.center.x, a.center.y, a.radius, a.start, a.sweep})}, {"tag", tag}};
  }
  const Segment& s = e.segment();
  return {{"seg", json::array({s.a.x, s.a.y, s.b.x, s.b.y})}, {"tag", tag}};
}

Edge edge_from(const json& j) {
  const json& t = j.at("tag");
  const int kind = t.at(0).get<int>();
  if (kind < 0 || kind > static_cast<int>(CurveKind::Spoke)) parse_error("bad curve tag");
  const CurveTag tag{static_cast<CurveKind>(kind), t.at(1).get<int>(), t.at(2).get<int>()};
  if (j.contains("arc")) {
    const json& a = j["arc"];
    if (a.size() != 5) parse_error("arc needs 5 numbers");
    return {Arc{{a[0].get<double>(), a[1].get<double>()}, a[2].get<double>(), a[3].get<double>(), a[4].get<double>()},
            tag};
  }
  const json& s = j.at("seg");
  if (s.size() != 4) parse_error("segment needs 4 numbers");
  return {Segment{{s[0].get<double>(), s[1].get<double>()}, {s[2].get<double>(), s[3].get<double>()}}, tag};
}

// Reads every non-blank line as one JSON record.
std::vector<json> read_records(std::istream& in) {
  std::vector<json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      parse_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (out.empty()) parse_error("empty file");
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  return out;
}

}  // namespace

Instance read_instance(std::istream& in) {
  const auto recs = read_records(in);
  return guarded([&] {
    const json& h = recs.front();
    if (h.value("type", "") != "instance") parse_error("first record must have type 'instance'");
    Instance inst;
    const json cfg = h.value("config", json::object());
    inst.config.tol = tol_from(cfg.value("tol", json::object()));
    inst.config.bbox_scale = cfg.value("bbox_scale", inst.config.bbox_scale);
    if (cfg.contains("bbox")) {
      const json& b = cfg["bbox"];
      if (b.size() != 4) parse_error("bbox needs [xmin, ymin, xmax, ymax]");
      inst.config.bbox = ConvexPolygon::axis_box({b[0].get<double>(), b[1].get<double>()},
                                                 {b[2].get<double>(), b[3].get<double>()});
    }
    if (cfg.contains("seed")) inst.seed = cfg["seed"].get<std::uint64_t>();
    inst.metric = metric_from(h.value("metric", json{{"kind", "euclidean"}}), inst.config.tol);
    for (std::size_t k = 1; k < recs.size(); ++k) {
      const json& r = recs[k];
      if (r.value("type", "") != "site") parse_error("expected a site record");
      Site s{r.at("id").get<int>(), {r.at("x").get<double>(), r.at("y").get<double>()}, r.at("appetite").get<double>()};
      if (!(s.appetite > 0.0)) parse_error("appetite must be positive");
      inst.sites.push_back(s);
    }
    return inst;
  });
}

void write_instance(std::ostream& out, const Instance& inst) {
  json cfg{{"tol", tol_json(inst.config.tol)}, {"bbox_scale", inst.config.bbox_scale}};
  if (inst.config.bbox) {
    const auto& v = inst.config.bbox->vertices;
    double x0 = v[0].x, y0 = v[0].y, x1 = v[0].x, y1 = v[0].y;
    for (Point p : v) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    cfg["bbox"] = json::array({x0, y0, x1, y1});
  }
  if (inst.seed) cfg["seed"] = *inst.seed;
  out << json{{"type", "instance"}, {"metric", metric_json(inst.metric)}, {"config", cfg}}.dump() << '\n';
  for (const Site& s : inst.sites)
    out << json{{"type", "site"}, {"id", s.id}, {"x", s.position.x}, {"y", s.position.y}, {"appetite", s.appetite}}
               .dump()
        << '\n';
}

StableDiagram read_diagram(std::istream& in) {
  const auto recs = read_records(in);
  return guarded([&] {
    const json& h = recs.front();
    if (h.value("type", "") != "diagram") parse_error("first record must have type 'diagram'");
    StableDiagram d;
    d.tol = tol_from(h.at("tol"));
    d.metric = metric_from(h.at("metric"), d.tol);
    for (const json& p : h.at("bbox")) d.bbox.vertices.push_back(point_from(p));
    const json& c = h.at("counts");
    d.counts = {c.at("faces").get<long>(), c.at("edges").get<long>(), c.at("vertices").get<long>()};
    const json& st = h.at("stats");
    d.stats = {st.at("primitive_calls").get<long>(), st.at("wall_seconds").get<double>(),
               st.at("iterations").get<int>()};
    for (std::size_t k = 1; k < recs.size(); ++k) {
      const json& r = recs[k];
      if (r.value("type", "") != "region") parse_error("expected a region record");
      SiteRegion s;
      s.id = r.at("id").get<int>();
      s.position = {r.at("x").get<double>(), r.at("y").get<double>()};
      s.appetite = r.at("appetite").get<double>();
      s.order = r.at("order").get<int>();
      s.radius = r.at("radius").get<double>();
      s.area = r.at("area").get<double>();
      for (const json& loop : r.at("loops")) {
        ArcSegBoundary b;
        for (const json& e : loop) b.elements.push_back(edge_from(e));
        s.loops.push_back(std::move(b));
      }
      d.regions.push_back(std::move(s));
    }
    return d;
  });
}

void write_diagram(std::ostream& out, const StableDiagram& d) {
  json bbox = json::array();
  for (Point p : d.bbox.vertices) bbox.push_back(point_json(p));
  const json head{{"type", "diagram"},
                  {"metric", metric_json(d.metric)},
                  {"bbox", bbox},
                  {"tol", tol_json(d.tol)},
                  {"counts", {{"faces", d.counts.faces}, {"edges", d.counts.edges}, {"vertices", d.counts.vertices}}},
                  {"stats",
                   {{"primitive_calls", d.stats.primitive_calls},
                    {"wall_seconds", d.stats.wall_seconds},
                    {"iterations", d.stats.iterations}}}};
  out << head.dump() << '\n';
  for (const SiteRegion& r : d.regions) {
    json loops = json::array();
    for (const ArcSegBoundary& b : r.loops) {
      json l = json::array();
      for (const Edge& e : b.elements) l.push_back(edge_json(e));
      loops.push_back(l);
    }
    out << json{{"type", "region"}, {"id", r.id},         {"x", r.position.x}, {"y", r.position.y},
                {"appetite", r.appetite}, {"order", r.order}, {"radius", r.radius}, {"area", r.area},
                {"loops", loops}}
               .dump()
        << '\n';
  }
}

Instance load_instance(const std::string& path) {
  auto in = open_in(path);
  return read_instance(in);
}

void save_instance(const std::string& path, const Instance& inst) {
  auto out = open_out(path);
  write_instance(out, inst);
}

StableDiagram load_diagram(const std::string& path) {
  auto in = open_in(path);
  return read_diagram(in);
}

void save_diagram(const std::string& path, const StableDiagram& d) {
  auto out = open_out(path);
  write_diagram(out, d);
}

std::string error_record(const Error& e) {
  return json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump();
}

}  // namespace smvd
