#include "knnkit/bruteforce.hpp"

#include <algorithm>
#include <string>

#include "knnkit/error.hpp"

namespace knnkit {

namespace {

void check_k(std::size_t k, std::size_t limit, const char* what) {
  if (k < 1 || k > limit) {
    throw InvalidParameter(std::string(what) + ": k=" + std::to_string(k) + " outside [1, " +
                           std::to_string(limit) + "]");
  }
}

// Computes the full distance row, skipping `skip` (n means none), then keeps
// the k smallest.
std::vector<Neighbor> knn_row(const Dataset& refs, PointView query, std::size_t k, std::size_t skip) {
  const std::size_t n = refs.size();
  const std::size_t d = refs.dim();
  std::vector<Neighbor> row;
  row.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip) continue;
    row.push_back({i, squared_euclidean_unchecked(refs.data() + i * d, query.data(), d)});
  }
  std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), row.end(), closer);
  row.resize(k);
  return row;
}

}  // namespace

std::vector<Neighbor> brute_knn(const Dataset& refs, PointView query, std::size_t k) {
  check_k(k, refs.size(), "brute_knn");
  if (query.size() != refs.dim()) {
    throw InvalidInput("brute_knn: query dimension " + std::to_string(query.size()) +
                       " differs from dataset dimension " + std::to_string(refs.dim()));
  }
  return knn_row(refs, query, k, refs.size());
}

std::vector<std::vector<Neighbor>> brute_knn_batch(const Dataset& refs, const Dataset& queries,
                                                   std::size_t k) {
  std::vector<std::vector<Neighbor>> out;
  out.reserve(queries.size());
  for (std::size_t j = 0; j < queries.size(); ++j) out.push_back(brute_knn(refs, queries[j], k));
  return out;
}

std::vector<std::vector<Neighbor>> brute_knn_join(const Dataset& set, std::size_t k) {
  if (set.size() < 2) throw InvalidParameter("brute_knn_join: needs at least 2 points");
  check_k(k, set.size() - 1, "brute_knn_join");
  std::vector<std::vector<Neighbor>> out;
  out.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) out.push_back(knn_row(set, set[i], k, i));
  return out;
}

}  // namespace knnkit
