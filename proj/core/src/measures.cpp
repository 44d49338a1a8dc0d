#include "hoinet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hoinet {

namespace {

const double kLn2PiE = 1.0 + std::log(2.0 * std::numbers::pi);

double entropy_from_residual(const Matrix& residual_cov) {
  const int m = static_cast<int>(residual_cov.rows());
  return 0.5 * (m * kLn2PiE + log_det_pd(residual_cov));
}

double subset_entropy(const LagCovarianceSet& covs, const SubsetIndex& subset, int q) {
  return entropy_from_residual(restricted_model(covs, subset, q).residual_cov);
}

SubsetIndex complement(int n, std::initializer_list<int> removed) {
  SubsetIndex out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) out.push_back(i);
  }
  return out;
}

SubsetIndex all_nodes(int n) { return complement(n, {}); }

double clamp_mir(double v) {
  return (v < 0.0 && v > -1e-9) ? 0.0 : v;
}

// The shared measure kernels take any callable mapping a subset to its
// entropy rate, so one-shot calls and the cached analyze path share code.
template <class EntropyFn>
double mir_impl(EntropyFn&& h, const SubsetIndex& y, const SubsetIndex& z) {
  SubsetIndex joint = y;
  joint.insert(joint.end(), z.begin(), z.end());
  return clamp_mir(h(y) + h(z) - h(joint));
}

template <class EntropyFn>
double oir_impl(EntropyFn&& h, const SubsetIndex& subset) {
  const int m = static_cast<int>(subset.size());
  if (m == 2) return 0.0;
  double total = (m - 2) * h(subset);
  for (int j : subset) {
    SubsetIndex rest;
    rest.reserve(subset.size() - 1);
    for (int i : subset) {
      if (i != j) rest.push_back(i);
    }
    total += h({j}) - h(rest);
  }
  return total;
}

template <class EntropyFn>
double gradient_impl(EntropyFn&& h, int n, int j) {
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    total += mir_impl(h, {j}, complement(n, {i, j}));
  }
  total += (2.0 - n) * mir_impl(h, {j}, complement(n, {j}));
  return total;
}

template <class EntropyFn>
double local_oir_impl(EntropyFn&& h, int n, int i, int j) {
  return h({i}) + h({j}) + h(complement(n, {i, j})) + h(all_nodes(n)) - h({i, j}) -
         h(complement(n, {j})) - h(complement(n, {i}));
}

}  // namespace

double SubsetEntropies::operator()(SubsetIndex subset) {
  if (subset.empty()) return 0.0;
  std::sort(subset.begin(), subset.end());
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(subset); it != cache_.end()) return it->second;
  }
  const double value = subset_entropy(covs_, subset, q_);
  std::lock_guard lock(mutex_);
  return cache_.emplace(std::move(subset), value).first->second;
}

double entropy_rate(const LagCovarianceSet& covs, const SubsetIndex& subset, int q) {
  validate_subset(subset, covs.n_nodes);
  return subset_entropy(covs, subset, q);
}

double mir(const LagCovarianceSet& covs, const SubsetIndex& y, const SubsetIndex& z, int q) {
  validate_subset(y, covs.n_nodes);
  validate_subset(z, covs.n_nodes);
  for (int i : y) {
    if (std::find(z.begin(), z.end(), i) != z.end()) {
      throw InvalidArgument("mir: subsets must be disjoint");
    }
  }
  auto h = [&](const SubsetIndex& s) { return subset_entropy(covs, s, q); };
  return mir_impl(h, y, z);
}

double oir(const LagCovarianceSet& covs, int q) { return oir(covs, all_nodes(covs.n_nodes), q); }

double oir(const LagCovarianceSet& covs, const SubsetIndex& subset, int q) {
  validate_subset(subset, covs.n_nodes);
  if (subset.size() < 2) throw InvalidArgument("oir: need at least two processes");
  SubsetEntropies h(covs, q);
  return oir_impl(h, subset);
}

double oir_gradient(const LagCovarianceSet& covs, int node, int q) {
  const int n = covs.n_nodes;
  if (n < 3) throw InvalidArgument("oir_gradient: need at least three processes");
  validate_subset({node}, n);
  SubsetEntropies h(covs, q);
  return gradient_impl(h, n, node);
}

double local_oir(const LagCovarianceSet& covs, int i, int j, int q) {
  const int n = covs.n_nodes;
  if (n < 3) throw InvalidArgument("local_oir: need at least three processes");
  if (i == j) throw InvalidArgument("local_oir: nodes must differ");
  validate_subset({i}, n);
  validate_subset({j}, n);
  SubsetEntropies h(covs, q);
  return local_oir_impl(h, n, i, j);
}

HoiValues analyze(const VarModel& model, int q) {
  if (q < 1) throw InvalidArgument("analyze: q must be >= 1");
  return analyze_covariances(process_covariances(model, std::max(q, model.order)), q);
}

HoiValues analyze_covariances(const LagCovarianceSet& covs, int q) {
  const int n = covs.n_nodes;
  if (n < 2) throw InvalidArgument("analyze: need at least two processes");
  SubsetEntropies h(covs, q);

  HoiValues out;
  out.n_nodes = n;
  out.entropy_rates.resize(static_cast<std::size_t>(n));
  out.gradient.assign(static_cast<std::size_t>(n), 0.0);
  out.mir.resize(static_cast<std::size_t>(n_pairs(n)));
  out.local_oir.assign(static_cast<std::size_t>(n_pairs(n)), 0.0);

  for (int i = 0; i < n; ++i) out.entropy_rates[static_cast<std::size_t>(i)] = h({i});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.mir[static_cast<std::size_t>(pair_index(i, j, n))] = mir_impl(h, {i}, {j});
    }
  }
  if (n == 2) {
    out.oir = 0.0;  // degenerate network: no interactions beyond the pair
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.local_oir[static_cast<std::size_t>(pair_index(i, j, n))] = local_oir_impl(h, n, i, j);
    }
  }
  for (int j = 0; j < n; ++j) out.gradient[static_cast<std::size_t>(j)] = gradient_impl(h, n, j);
  out.oir = oir_impl(h, all_nodes(n));
  return out;
}

}  // namespace hoinet
