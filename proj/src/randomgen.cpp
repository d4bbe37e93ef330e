#include "arbx/randomgen.hpp"

#include <set>

namespace arbx {

Instance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params) {
  std::uniform_int_distribution<int> n_dist(params.min_n, params.max_n);
  const int n = n_dist(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> cost(0, params.max_cost);
  std::uniform_int_distribution<int> vertex(0, n - 1);

  std::vector<InstanceArc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j < n; ++j) {  // vertex 0 is the root, nothing enters it
      if (i == j) continue;
      if (coin(rng) < params.arc_prob) arcs.push_back({i, j, cost(rng)});
    }
  }

  std::uniform_int_distribution<int> prec_count(0, params.max_precedences);
  int want = prec_count(rng);
  std::set<std::pair<int, int>> pairs;
  for (int tries = 0; tries < 10 * want && static_cast<int>(pairs.size()) < want; ++tries) {
    int s = vertex(rng);
    int t = vertex(rng);
    if (s == t || t == 0) continue;
    if (pairs.count({t, s})) continue;  // avoid mutually exclusive orders
    pairs.emplace(s, t);
  }

  return normalize(n, 0, std::move(arcs), {pairs.begin(), pairs.end()},
                   "rand_n" + std::to_string(n));
}

}  // namespace arbx
