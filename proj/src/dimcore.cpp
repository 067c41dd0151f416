#include "rectdim/dimcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rectdim::core {

void ProductSpaceSpec::validate() const {
  if (d < 1) throw std::invalid_argument("ProductSpaceSpec: d must be >= 1");
  if (static_cast<int>(deltas.size()) != d)
    throw std::invalid_argument("ProductSpaceSpec: deltas size must equal d");
  for (double dl : deltas)
    if (!(dl > 0.0) || !std::isfinite(dl))
      throw std::invalid_argument("ProductSpaceSpec: every delta must be positive");
  if (!(kappa >= 0.0) || !(kappa < 1.0))
    throw std::invalid_argument("ProductSpaceSpec: kappa must lie in [0,1)");
}

void ExponentProfile::validate() const {
  if (a.empty() || a.size() != t.size())
    throw std::invalid_argument("ExponentProfile: a and t must be nonempty and equal-length");
  for (double v : a)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("ExponentProfile: every a_i must be positive");
  for (double v : t)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("ExponentProfile: every t_i must be non-negative");
}

static void validate_pair(const ProductSpaceSpec& space, const ExponentProfile& profile) {
  space.validate();
  profile.validate();
  if (profile.d() != space.d)
    throw std::invalid_argument("space and profile dimension mismatch");
}

Alphabet build_alphabet(const ExponentProfile& profile) {
  profile.validate();
  Alphabet out;
  const int d = profile.d();
  out.entries.reserve(2 * d);
  for (int i = 0; i < d; ++i) {
    out.entries.push_back(profile.a[i]);
    out.entries.push_back(profile.a[i] + profile.t[i]);
    out.hat_entries.push_back(profile.a[i] + profile.t[i]);
  }
  auto dedupe = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(out.entries);
  dedupe(out.hat_entries);
  return out;
}

Partition partition_for(double A, const ExponentProfile& profile, TiePolicy policy) {
  profile.validate();
  if (!(A > 0.0)) throw std::invalid_argument("partition_for: A must be positive");
  Partition p;
  p.candidate = A;
  const int d = profile.d();
  for (int k = 0; k < d; ++k) {
    const double ak = profile.a[k];
    const double sk = profile.a[k] + profile.t[k];
    bool in_k1 = (policy == TiePolicy::StrictK1) ? (ak > A) : (ak >= A);
    if (policy == TiePolicy::MergeEqualIntoK2 && ak == A && sk == A) in_k1 = false;
    if (in_k1) {
      p.k1.push_back(k);
    } else if (sk <= A) {
      p.k2.push_back(k);
    } else {
      p.k3.push_back(k);
    }
  }
  return p;
}

static double candidate_value(const ProductSpaceSpec& space, const ExponentProfile& profile,
                              const Partition& p) {
  double sum_k1 = 0.0, sum_k2 = 0.0, sum_k3 = 0.0;
  double num = 0.0;  // sum_{k3} a_k d_k - sum_{k2} t_k d_k
  for (int k : p.k1) sum_k1 += space.deltas[k];
  for (int k : p.k2) {
    sum_k2 += space.deltas[k];
    num -= profile.t[k] * space.deltas[k];
  }
  for (int k : p.k3) {
    sum_k3 += space.deltas[k];
    num += profile.a[k] * space.deltas[k];
  }
  return sum_k1 + sum_k2 + space.kappa * sum_k3 +
         (1.0 - space.kappa) * num / p.candidate;
}

double candidate_dim(double A, const ProductSpaceSpec& space,
                     const ExponentProfile& profile, TiePolicy policy) {
  validate_pair(space, profile);
  return candidate_value(space, profile, partition_for(A, profile, policy));
}

static DimensionReport minimize_over(const ProductSpaceSpec& space,
                                     const ExponentProfile& profile,
                                     const std::vector<double>& candidates,
                                     TiePolicy policy) {
  DimensionReport rep;
  bool first = true;
  for (double A : candidates) {
    CandidateRow row;
    row.A = A;
    row.partition = partition_for(A, profile, policy);
    row.value = candidate_value(space, profile, row.partition);
    if (first || row.value < rep.value) {
      rep.value = row.value;
      rep.argmin = A;
      rep.partition = row.partition;
      first = false;
    }
    rep.table.push_back(std::move(row));
  }
  return rep;
}

DimensionReport compute_s(const ProductSpaceSpec& space, const ExponentProfile& profile,
                          TiePolicy policy) {
  validate_pair(space, profile);
  return minimize_over(space, profile, build_alphabet(profile).entries, policy);
}

DimensionReport compute_s_hat(const ProductSpaceSpec& space, const ExponentProfile& profile,
                              TiePolicy policy) {
  validate_pair(space, profile);
  return minimize_over(space, profile, build_alphabet(profile).hat_entries, policy);
}

std::pair<double, std::size_t> sup_over_candidates(
    const ProductSpaceSpec& space, const std::vector<ExponentProfile>& profiles) {
  if (profiles.empty())
    throw std::invalid_argument("sup_over_candidates: empty candidate set");
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const double v = compute_s(space, profiles[i]).value;
    if (i == 0 || v > best) {
      best = v;
      best_i = i;
    }
  }
  return {best, best_i};
}

}  // namespace rectdim::core
