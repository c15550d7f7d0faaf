#pragma once

// Instance and diagram files. Both are JSON Lines: a header record followed
// by one record per site. Numbers are written in shortest round-trip form,
// so parse(serialize(x)) reproduces every double bit for bit.
//
// Instance:
//   {"type":"instance","metric":{"kind":"euclidean"},"config":{...}}
//   {"type":"site","id":0,"x":1.5,"y":2.0,"appetite":1.0}
// Diagram:
//   {"type":"diagram","metric":...,"bbox":[[x,y],...],"tol":{...},"counts":{...},"stats":{...}}
//   {"type":"region","id":0,...,"loops":[[element,...],...]}
// An element is {"seg":[ax,ay,bx,by],"tag":[kind,a,b]} or
// {"arc":[cx,cy,radius,start,sweep],"tag":[kind,a,b]}.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "smvd/solver.hpp"

namespace smvd {

struct Instance {
  Metric metric;
  std::vector<Site> sites;
  SolverConfig config;
  std::optional<std::uint64_t> seed;
};

Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

StableDiagram read_diagram(std::istream& in);
void write_diagram(std::ostream& out, const StableDiagram& d);
StableDiagram load_diagram(const std::string& path);
void save_diagram(const std::string& path, const StableDiagram& d);

/// One-line JSON error record: {"error":"ParseError","message":"..."}.
std::string error_record(const Error& e);

}  // namespace smvd
