#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "schubcell/biratmap.hpp"

namespace schubcell {

enum class Part {
  inverse,          // i: inverse composed with forward is the identity
  superdiagonal,    // ii: corner-minor ratios equal level-set reciprocal sums
  diagonal,         // iii: corner-minor ratios equal the signed monomial form
  jacobian,         // iv: triangularity and the measure determinant
  v_consequences,   // testable consequences of the coefficient-ring claim
  identities,       // closed-form and reduction identity battery
  bounds,           // truncation-bound shape and containment
};

std::set<Part> parse_parts(const std::string& csv);
std::string part_name(Part p);

struct CheckResult {
  enum class Status { pass, fail, skipped };
  std::string name;
  Status status = Status::pass;
  std::string witness;  // serialized counterexample for failures
};

struct CheckReport {
  std::string element;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool all_pass() const;
  void add_pass(const std::string& name);
  void add_fail(const std::string& name, const std::string& witness);
  void add_skip(const std::string& name);
};

struct ElementOptions {
  bool symbolic = true;       // exact identities; false = seeded-point identities
  int sample_points = 3;      // points per identity when symbolic = false
  int round_trip_points = 50;
  int symbolic_inverse_max_rank = 4;
  int containment_samples = 10000;
  mpq_class M = 1;
  uint64_t seed = 1;
  const PathSumMutation* mutation = nullptr;
};

CheckReport verify_element(const Permutation& w, const std::set<Part>& parts,
                           const ElementOptions& opt = {});

// Reduction-compatibility, level-compatibility and containment batteries.
CheckReport cross_checks(const Permutation& w);

struct SweepConfig {
  int r = 3;
  bool exhaustive = true;
  int sample_count = 0;  // sampled elements when not exhaustive
  uint64_t seed = 1;
  std::set<Part> parts;
  ElementOptions element;
  int threads = 0;  // 0 = SCHUBCELL_THREADS or hardware concurrency
};

struct SweepReport {
  int r = 0;
  bool exhaustive = true;
  uint64_t seed = 0;
  size_t examined = 0;
  size_t passed = 0;
  std::vector<CheckReport> failures;
  double seconds = 0;

  bool all_pass() const { return examined > 0 && passed == examined; }
};

SweepReport verify_sweep(const SweepConfig& config);

}  // namespace schubcell
