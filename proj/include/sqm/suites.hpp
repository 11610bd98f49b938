#pragma once

#include "sqm/car.hpp"
#include "sqm/propagator.hpp"

#include <cstdint>
#include <vector>

namespace sqm {

/// Seeded random sweeps shared by the command-line tool, the tests and the bindings.

struct KappaTrial {
  std::size_t k;
  std::vector<double> x;
  std::vector<double> t;
  cplx direct;
  cplx reduced;
  double residual;  // relative
};

/// Random folded configurations (x_1..x_k, x'_{k-1}..x'_2) at increasing times.
std::vector<KappaTrial> kappa_suite(const Propagator& kernel, std::size_t k, std::size_t trials, std::uint64_t seed);

struct SorkinTrial {
  std::size_t terms;
  std::size_t dim;
  double residual;
};

/// Scaled Ginibre contractions and random density operators, K and dim drawn uniformly.
std::vector<SorkinTrial> sorkin_suite(std::size_t trials, std::uint64_t seed, std::size_t k_min = 3,
                                      std::size_t k_max = 5, std::size_t dim_max = 16);

struct ZetaTrial {
  std::size_t n;
  std::size_t dim;
  cplx direct;
  cplx reduced;
  double residual;  // relative
};

std::vector<ZetaTrial> zeta_suite(std::size_t trials, std::uint64_t seed, std::size_t n_max = 8,
                                  std::size_t dim_max = 16);

struct ZetaConjugateCheck {
  double plain;
  double conjugated;
  double direct;
};

/// Probability from zeta_3 and from its conjugate on random caps of an exact spin-1/2 family.
ZetaConjugateCheck zeta_conjugate_check(std::uint64_t seed);

struct CarTrial {
  OrthoPair p;
  OrthoPair q;
  LawCheck law;
  LawCheck trace;
};

/// Random orthonormal pair-pairs in R^k, evaluated in the irreducible representation.
std::vector<CarTrial> car_suite(std::size_t k, std::size_t trials, std::uint64_t seed);

/// Ginibre matrix: standard normal real and imaginary parts, filled column-major.
Matrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace sqm
