#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "sqm/ccr.hpp"
#include "sqm/coherent.hpp"
#include "sqm/interval_set.hpp"
#include "sqm/linalg.hpp"

namespace cli {

using Json = nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  double tol = -1.0;  // negative: per-command default
  bool csv = false;
  std::string config;
  double tolerance(double fallback) const { return tol > 0.0 ? tol : fallback; }
};

/// JSON-lines (or CSV) sink. Records carrying "pass": false count as failures unless flagged
/// "expected_failure".
class Emitter {
 public:
  void open(const Common& c);
  void emit(Json rec);
  std::size_t records() const { return n_; }
  std::size_t failures() const { return failures_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = &std::cout;
  bool csv_ = false;
  std::uint64_t seed_ = 1;
  std::vector<std::string> header_;
  std::size_t n_ = 0;
  std::size_t failures_ = 0;
};

struct Context {
  Common common;
  Emitter out;
};

/// Adds --config/--seed/--out/--tol/--json/--csv to a subcommand.
void add_common(CLI::App* sub, Common& c);

/// Expands `--config PATH` into `--key=value` tokens placed right after the subcommand name, so
/// explicit command-line options (parsed later, TakeLast) override the file.
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& subcommands);

Json cj(sqm::cplx z);
Json vec_json(const sqm::RealVector& v);

std::vector<double> parse_doubles(const std::string& s);
std::vector<std::size_t> parse_sizes(const std::string& s);
/// "lo:hi,lo:hi".
sqm::IntervalSet parse_intervals(const std::string& s);
/// "lo:hi,lo:hi;lo:hi".
std::vector<sqm::IntervalSet> parse_regions(const std::string& s);
/// "x,y,z;x,y,z": unit vectors after normalisation.
std::vector<sqm::Vec3> parse_directions(const std::string& s);
/// "theta,phi,alpha;...": caps, angles in radians.
std::vector<sqm::Region> parse_caps(const std::string& s);
/// "a,b@lo:hi,lo:hi;...": one-mode field projections chi_S(a Q + b P).
std::vector<sqm::FieldFactor> parse_factors(const std::string& s);
/// "0,1,2;3,4,5": coordinate subspaces.
std::vector<std::vector<std::size_t>> parse_index_sets(const std::string& s);
/// "0<1,2<3" or "0|1,2|3" style index pairs with the given separator.
std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& s, char sep);

void register_particle(CLI::App& app, Context& ctx);
void register_povm(CLI::App& app, Context& ctx);
void register_field(CLI::App& app, Context& ctx);

}  // namespace cli
