#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rectdim/errors.hpp"

namespace rectdim::core {

// Product of d Ahlfors-regular factor spaces with a common scaling
// parameter kappa in [0,1).
struct ProductSpaceSpec {
  int d = 1;
  std::vector<double> deltas;
  double kappa = 0.0;

  void validate() const;
};

// Side exponents of a rectangle family: big side i has length rho^{a_i},
// shrunk side i has length rho^{a_i + t_i}.
struct ExponentProfile {
  std::vector<double> a;
  std::vector<double> t;

  int d() const { return static_cast<int>(a.size()); }
  void validate() const;
};

// Candidate covering-radius exponents: entries = {a_i} U {a_i + t_i},
// hat_entries = {a_i + t_i}. Sorted, deduplicated by exact comparison.
struct Alphabet {
  std::vector<double> entries;
  std::vector<double> hat_entries;
};

enum class TiePolicy {
  Default,            // k1: a_k >= A;  k2: a_k + t_k <= A, minus k1
  StrictK1,           // k1: a_k >  A
  MergeEqualIntoK2,   // indices with a_k = A = a_k + t_k move to k2
};

// Split of directions {0..d-1} by how the covering exponent A compares
// to the side exponents.
struct Partition {
  double candidate = 0.0;
  std::vector<int> k1, k2, k3;
};

struct CandidateRow {
  double A = 0.0;
  Partition partition;
  double value = 0.0;
};

struct DimensionReport {
  double value = 0.0;
  double argmin = 0.0;
  Partition partition;
  std::vector<CandidateRow> table;
};

Alphabet build_alphabet(const ExponentProfile& profile);

Partition partition_for(double A, const ExponentProfile& profile,
                        TiePolicy policy = TiePolicy::Default);

double candidate_dim(double A, const ProductSpaceSpec& space,
                     const ExponentProfile& profile,
                     TiePolicy policy = TiePolicy::Default);

// Minimum of candidate_dim over the full alphabet; ties resolved to the
// smallest A. The table lists every alphabet entry in increasing order.
DimensionReport compute_s(const ProductSpaceSpec& space,
                          const ExponentProfile& profile,
                          TiePolicy policy = TiePolicy::Default);

// Same minimum restricted to hat_entries; agrees with compute_s.
DimensionReport compute_s_hat(const ProductSpaceSpec& space,
                              const ExponentProfile& profile,
                              TiePolicy policy = TiePolicy::Default);

// Maximum of compute_s over a finite candidate list; first index wins ties.
std::pair<double, std::size_t> sup_over_candidates(
    const ProductSpaceSpec& space, const std::vector<ExponentProfile>& profiles);

}  // namespace rectdim::core
