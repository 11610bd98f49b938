#pragma once

#include "sqm/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sqm {

/// Finite sample of scopes with the order and orthogonality relations evaluated on indices.
struct ScopeSample {
  std::vector<std::string> names;
  std::function<bool(std::size_t, std::size_t)> leq;
  std::function<bool(std::size_t, std::size_t)> perp;
  std::size_t size() const { return names.size(); }
};

struct AxiomReport {
  std::string axiom;
  bool existential = false;
  bool pass = true;  // existential: every required witness was found in the sample
  std::vector<std::vector<std::size_t>> witnesses;  // counterexamples, or cases without a witness
};

struct OrthogonalityReport {
  std::vector<AxiomReport> axioms;  // reflexive, transitive, symmetric, then axioms 1-3
  bool pass = true;                 // no counterexample to a universal axiom
  bool witnesses_complete = true;   // every existential axiom found its witnesses in the sample
};

/// Searches the sample for counterexamples. Existential axioms only look for witnesses inside
/// the sample, so a missing witness is reported without failing the check.
OrthogonalityReport check_orthogonality_axioms(const ScopeSample& sample);

struct LocalAlgebraHandle {
  std::string scope;
  std::vector<Operator> generators;
};

struct NetCheckOptions {
  std::size_t word_length = 4;
  double membership_tol = 1e-8;
  double commutator_tol = 1e-10;
};

struct InclusionEntry {
  std::size_t lower;
  std::size_t upper;
  double residual;  // worst relative distance of a generator from the word span
  std::size_t span_dim;
  bool pass;
};

struct CommutationEntry {
  std::size_t a;
  std::size_t b;
  double residual;  // max Frobenius norm of [x, y] over generator pairs
  bool pass;
};

struct NetReport {
  bool common_identity = true;
  std::vector<InclusionEntry> inclusions;
  std::vector<CommutationEntry> commutations;
  bool pass = true;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Frobenius norm of the largest generator commutator between two handles.
double max_commutator(const LocalAlgebraHandle& a, const LocalAlgebraHandle& b);
/// Relative residual of x against the span of words of length <= len in the generators (identity included).
double span_residual(const std::vector<Operator>& generators, const Operator& x, std::size_t len,
                     std::size_t* span_dim = nullptr);

NetReport check_causal_net(const std::vector<LocalAlgebraHandle>& handles, const std::vector<IndexPair>& inclusions,
                           const std::vector<IndexPair>& orthogonal, const NetCheckOptions& opt = {});

}  // namespace sqm
