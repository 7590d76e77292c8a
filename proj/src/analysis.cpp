#include "qpcolor/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "qpcolor/partition.hpp"
#include "qpcolor/rng.hpp"

namespace qpc {

namespace {

constexpr std::uint64_t kPairStream = 0x70616972ULL;
constexpr std::uint64_t kDrcStream = 0x647263ULL;
constexpr std::uint64_t kPropStream = 0x70726f70ULL;
constexpr std::uint64_t kStripStream = 0x73747270ULL;
constexpr std::uint64_t kCapStream = 0x636170ULL;
constexpr std::uint64_t kRichStream = 0x72696368ULL;

constexpr std::size_t kExhaustiveLimit = 1'000'000;
constexpr std::size_t kVerifyDraws = 100'000;

// Lexicographic r-combinations of {0..n-1}; fn returns false to stop early.
template <typename Fn>
void for_each_combination(std::size_t n, int r, Fn&& fn) {
  if (r <= 0 || static_cast<std::size_t>(r) > n) return;
  std::vector<std::size_t> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = static_cast<std::size_t>(i);
  while (true) {
    if (!fn(std::span<const std::size_t>{idx})) return;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - static_cast<std::size_t>(r - i)) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// C(n, r) in floating point, +inf once it exceeds any feasible budget.
double choose_double(std::size_t n, int r) {
  if (r < 0 || static_cast<std::size_t>(r) > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= r; ++i) {
    v *= static_cast<double>(n - static_cast<std::size_t>(r - i)) / static_cast<double>(i);
    if (v > 1e18) return std::numeric_limits<double>::infinity();
  }
  return v;
}

void sample_distinct(SplitRng& rng, std::size_t n, int r, std::vector<std::size_t>& out) {
  out.clear();
  while (static_cast<int>(out.size()) < r) {
    const std::size_t v = rng.uniform_below(n);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
}

}  // namespace

std::size_t codegree(const BitMatrix& adj, std::span<const std::size_t> s) {
  std::vector<std::uint64_t> acc;
  and_rows(adj, s, acc);
  return popcount_words(acc);
}

std::size_t codegree(const SimpleGraph& g, std::span<const std::size_t> s) {
  return codegree(g.adj, s);
}

std::size_t codegree(const SimpleGraph& g, std::size_t u, std::size_t v) {
  const std::size_t s[2] = {u, v};
  return codegree(g.adj, s);
}

double mean_pair_codegree(const SimpleGraph& g, std::size_t samples, std::uint64_t seed) {
  if (g.n < 2) throw std::invalid_argument("mean_pair_codegree: need at least two vertices");
  if (samples == 0) throw std::invalid_argument("mean_pair_codegree: need samples");
  SplitRng rng(derive_seed(seed, kPairStream));
  std::vector<std::uint64_t> acc;
  std::size_t pair[2];
  double total = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    pair[0] = rng.uniform_below(g.n);
    pair[1] = rng.uniform_below(g.n - 1);
    if (pair[1] >= pair[0]) ++pair[1];
    and_rows(g.adj, {pair, 2}, acc);
    total += static_cast<double>(popcount_words(acc));
  }
  return total / static_cast<double>(samples);
}

double max_rotated_distance(const SphereFamily& family,
                            std::span<const std::size_t> vertices) {
  const int q = family.params().q;
  if (static_cast<int>(vertices.size()) != q) {
    throw std::invalid_argument("max_rotated_distance: need exactly q vertices");
  }
  std::vector<double> rotated(2 * static_cast<std::size_t>(family.params().k));
  double worst = 0.0;
  for (int r = 0; r < q; ++r) {
    for (int s = 0; s < q; ++s) {
      if (r == s) continue;
      const auto us = family.point(vertices[s]);
      std::copy(us.begin(), us.end(), rotated.begin());
      rotate_in_place(rotated, s - r, q);
      worst = std::max(worst, distance(family.point(vertices[r]), rotated));
    }
  }
  return worst;
}

std::optional<RotationTuple> find_rotation_tuple(const SphereFamily& family,
                                                 std::span<const std::size_t> candidates,
                                                 double threshold) {
  if (threshold <= 0.0) {
    throw std::invalid_argument("find_rotation_tuple: threshold must be positive");
  }
  const int q = family.params().q;
  // |zeta^r u_r - zeta^s u_s|^2 = 2 - 2 Re(zeta^{r-s} <u_r, u_s>)
  const double min_re = 1.0 - threshold * threshold / 2.0;
  std::vector<std::complex<double>> zp(q);
  for (int e = 0; e < q; ++e) zp[e] = zeta_power(e, q);

  std::vector<std::vector<std::size_t>> per_sphere(family.spheres());
  if (candidates.empty()) {
    for (std::size_t v = 0; v < family.total(); ++v) {
      per_sphere[family.origin(v).sphere].push_back(v);
    }
  } else {
    for (std::size_t v : candidates) per_sphere[family.origin(v).sphere].push_back(v);
    for (auto& ids : per_sphere) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
  }

  for (int j = 0; j < family.spheres(); ++j) {
    const auto& ids = per_sphere[j];
    if (static_cast<int>(ids.size()) < q) continue;
    std::vector<std::size_t> chosen;
    chosen.reserve(q);
    std::function<bool(int)> dfs = [&](int role) -> bool {
      if (role == q) return max_rotated_distance(family, chosen) < threshold;
      for (std::size_t v : ids) {
        if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
        bool ok = true;
        for (int rr = 0; rr < role && ok; ++rr) {
          const auto ip = inner(family.point(chosen[rr]), family.point(v));
          const int e = ((rr - role) % q + q) % q;
          ok = (zp[e] * ip).real() > min_re;
        }
        if (!ok) continue;
        chosen.push_back(v);
        if (dfs(role + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (dfs(0)) {
      RotationTuple tuple;
      tuple.sphere = j;
      tuple.vertices = chosen;
      tuple.max_rotated_distance = max_rotated_distance(family, chosen);
      return tuple;
    }
  }
  return std::nullopt;
}

TupleCodegreeReport audit_tuple_codegree(const SetColoring& coloring, int f,
                                         const RotationTuple& tuple, double eps) {
  const int q = coloring.q, p = coloring.p;
  if (f < 0 || f >= q) throw std::invalid_argument("audit_tuple_codegree: color out of range");
  if (static_cast<int>(tuple.vertices.size()) != q) {
    throw std::invalid_argument("audit_tuple_codegree: tuple must hold q vertices");
  }
  TupleCodegreeReport rep;
  rep.bound = eps * static_cast<double>(coloring.n);
  const BitMatrix& adj = coloring.color[f];
  std::vector<std::size_t> subset(p + 1);
  std::vector<int> worst_roles;
  for_each_combination(static_cast<std::size_t>(q), p + 1,
                       [&](std::span<const std::size_t> idx) {
                         for (int i = 0; i <= p; ++i) subset[i] = tuple.vertices[idx[i]];
                         const std::size_t c = codegree(adj, subset);
                         rep.subset_codegrees.push_back(c);
                         ++rep.subsets_checked;
                         if (rep.worst_subset.empty() || c > rep.max_codegree) {
                           rep.max_codegree = c;
                           rep.worst_subset = subset;
                           worst_roles.assign(idx.begin(), idx.end());
                         }
                         return true;
                       });
  rep.pass = static_cast<double>(rep.max_codegree) < rep.bound;
  for (std::size_t a = 0; a < worst_roles.size() && !rep.has_pigeonhole_pair; ++a) {
    for (std::size_t b = a + 1; b < worst_roles.size(); ++b) {
      const int d = worst_roles[b] - worst_roles[a];
      if (d >= p && d <= q - p) {
        rep.has_pigeonhole_pair = true;
        rep.pigeonhole_r = worst_roles[a];
        rep.pigeonhole_s = worst_roles[b];
        rep.pigeonhole_u = tuple.vertices[worst_roles[a]];
        rep.pigeonhole_v = tuple.vertices[worst_roles[b]];
        break;
      }
    }
  }
  return rep;
}

std::vector<std::size_t> compute_J_set(const SphereFamily& family, const UnitVector& x,
                                       double mu) {
  const int q = family.params().q;
  std::vector<std::complex<double>> zp(q);
  for (int e = 0; e < q; ++e) zp[e] = zeta_power(e, q);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < family.total(); ++v) {
    const auto ip = inner(family.point(v), x.data());
    bool all = true;
    for (int s = 0; s < q && all; ++s) all = std::abs((zp[s] * ip).imag()) > 3.0 * mu;
    if (all) out.push_back(v);
  }
  return out;
}

CentroidPairingReport centroid_pairing_check(const SphereFamily& family,
                                             std::span<const std::size_t> tuple,
                                             std::size_t u, std::size_t u_prime, int ell,
                                             double mu) {
  const int q = family.params().q;
  if (static_cast<int>(tuple.size()) != q) {
    throw std::invalid_argument("centroid_pairing_check: tuple must hold q vertices");
  }
  const std::size_t width = 2 * static_cast<std::size_t>(family.params().k);
  std::vector<double> sum(width, 0.0);
  for (std::size_t w : tuple) {
    const auto pt = family.point(w);
    for (std::size_t i = 0; i < width; ++i) sum[i] += pt[i];
  }
  CentroidPairingReport rep;
  double n2 = 0.0;
  for (double v : sum) n2 += v * v;
  rep.sum_norm = std::sqrt(n2);
  rep.sum_bound = 2.0 * q * std::sqrt(mu);

  const auto pu = family.point(u);
  std::vector<double> diff(pu.begin(), pu.end());
  const auto pv = family.point(u_prime);
  std::vector<double> rot(pv.begin(), pv.end());
  rotate_in_place(rot, ell, q);
  for (std::size_t i = 0; i < width; ++i) diff[i] -= rot[i];
  std::vector<double> centroid(sum);
  for (double& v : centroid) v /= static_cast<double>(q);
  rep.inner_modulus = std::abs(inner(std::span<const double>(centroid),
                                     std::span<const double>(diff)));
  rep.inner_bound = 4.0 * mu;
  rep.pass = rep.sum_norm < rep.sum_bound && rep.inner_modulus < rep.inner_bound;
  return rep;
}

std::size_t min_cross_degree(const SetColoring& coloring, int f, int j, int h) {
  if (coloring.origins.empty()) {
    throw std::invalid_argument("min_cross_degree: coloring has no vertex origins");
  }
  if (j == h) throw std::invalid_argument("min_cross_degree: spheres must differ");
  if (f < 0 || f >= coloring.q) {
    throw std::invalid_argument("min_cross_degree: color out of range");
  }
  auto range = [&](int sphere) {
    std::size_t begin = coloring.n, end = 0;
    for (std::size_t v = 0; v < coloring.n; ++v) {
      if (coloring.origins[v].sphere == sphere) {
        begin = std::min(begin, v);
        end = v + 1;
      }
    }
    if (begin >= end) throw std::invalid_argument("min_cross_degree: empty sphere");
    return std::pair<std::size_t, std::size_t>{begin, end};
  };
  const auto [bj, ej] = range(j);
  const auto [bh, eh] = range(h);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = bj; v < ej; ++v) {
    best = std::min(best, coloring.color[f].row_popcount_range(v, bh, eh));
  }
  return best;
}

std::size_t cross_bipartite_mismatches(const SetColoring& a, int fa, const SetColoring& b,
                                       int fb, int sphere) {
  if (a.n != b.n) throw std::invalid_argument("cross_bipartite_mismatches: size mismatch");
  if (a.origins.empty() || a.origins != b.origins) {
    throw std::invalid_argument("cross_bipartite_mismatches: origins missing or differ");
  }
  if (fa < 0 || fa >= a.q || fb < 0 || fb >= b.q) {
    throw std::invalid_argument("cross_bipartite_mismatches: color out of range");
  }
  const std::size_t words = (a.n + 63) / 64;
  std::vector<std::uint64_t> in_sphere(words, 0);
  for (std::size_t v = 0; v < a.n; ++v) {
    if (a.origins[v].sphere == sphere) {
      in_sphere[v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  std::size_t mismatches = 0;
  for (std::size_t v = 0; v < a.n; ++v) {
    if (a.origins[v].sphere != sphere) continue;
    const auto ra = a.color[fa].row(v);
    const auto rb = b.color[fb].row(v);
    for (std::size_t w = 0; w < words; ++w) {
      mismatches += std::popcount((ra[w] ^ rb[w]) & ~in_sphere[w]);
    }
  }
  return mismatches;
}

namespace {

struct PruneResult {
  std::vector<std::size_t> kept;  // surviving vertex ids
  bool sampled = false;           // any pruning round used sampling
};

// Removes members until no known r-subset has codegree below m; bad subsets
// come from exhaustive enumeration when feasible, sampling otherwise.
PruneResult prune_low_codegree(const BitMatrix& adj, std::vector<std::size_t> members,
                               int r, double m, SplitRng& rng) {
  PruneResult res;
  std::vector<char> alive(members.size(), 1);
  auto alive_ids = [&]() {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (alive[i]) ids.push_back(i);
    }
    return ids;
  };
  std::vector<std::size_t> verts(r), pick;
  while (true) {
    const std::vector<std::size_t> ids = alive_ids();
    if (static_cast<int>(ids.size()) < r) break;
    const bool exhaustive = choose_double(ids.size(), r) <= kExhaustiveLimit;
    if (!exhaustive) res.sampled = true;
    std::vector<std::vector<std::size_t>> bad;  // member indices
    auto consider = [&](std::span<const std::size_t> idx) {
      for (int i = 0; i < r; ++i) verts[i] = members[ids[idx[i]]];
      if (static_cast<double>(codegree(adj, verts)) < m) {
        std::vector<std::size_t> b(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) b[i] = ids[idx[i]];
        bad.push_back(std::move(b));
      }
    };
    if (exhaustive) {
      for_each_combination(ids.size(), r, [&](std::span<const std::size_t> idx) {
        consider(idx);
        return true;
      });
    } else {
      for (std::size_t d = 0; d < kVerifyDraws; ++d) {
        sample_distinct(rng, ids.size(), r, pick);
        std::sort(pick.begin(), pick.end());
        consider(pick);
      }
    }
    if (bad.empty()) break;
    // greedy cover: repeatedly drop the vertex in the most bad subsets
    std::vector<std::size_t> load(members.size(), 0);
    std::vector<char> active(bad.size(), 1);
    std::size_t remaining = bad.size();
    for (const auto& b : bad) {
      for (std::size_t i : b) ++load[i];
    }
    while (remaining > 0) {
      std::size_t target = members.size();
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (alive[i] && load[i] > 0 && (target == members.size() || load[i] > load[target])) {
          target = i;
        }
      }
      if (target == members.size()) break;
      alive[target] = 0;
      for (std::size_t bi = 0; bi < bad.size(); ++bi) {
        if (!active[bi]) continue;
        if (std::find(bad[bi].begin(), bad[bi].end(), target) != bad[bi].end()) {
          active[bi] = 0;
          --remaining;
          for (std::size_t i : bad[bi]) --load[i];
        }
      }
    }
    if (exhaustive) break;  // all bad subsets were known and are now covered
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (alive[i]) res.kept.push_back(members[i]);
  }
  return res;
}

}  // namespace

DrcReport drc_rich_subset(const SimpleGraph& g, const DrcParams& params, std::uint64_t seed,
                          int retry_cap) {
  if (params.t_exponent < 1 || params.r < 1) {
    throw std::invalid_argument("drc_rich_subset: t and r must be >= 1");
  }
  if (g.n == 0) throw std::invalid_argument("drc_rich_subset: empty graph");
  DrcReport rep;
  rep.params = params;
  rep.n = g.n;
  rep.average_degree = 2.0 * static_cast<double>(g.edges()) / static_cast<double>(g.n);
  const double t = static_cast<double>(params.t_exponent);
  const double n = static_cast<double>(g.n);
  rep.guarantee = std::pow(rep.average_degree, t) / std::pow(n, t - 1.0) -
                  choose_double(g.n, params.r) * std::pow(params.m / n, t);
  rep.guaranteed = rep.guarantee >= params.a;

  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    SplitRng rng(derive_seed(seed, kDrcStream, static_cast<std::uint64_t>(attempt)));
    std::vector<std::size_t> picks(params.t_exponent);
    for (auto& v : picks) v = rng.uniform_below(g.n);
    std::vector<std::uint64_t> acc;
    and_rows(g.adj, picks, acc);
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < g.n; ++v) {
      if ((acc[v / 64] >> (v % 64)) & 1u) members.push_back(v);
    }

    PruneResult pruned = prune_low_codegree(g.adj, std::move(members), params.r,
                                            params.m, rng);
    const std::vector<std::size_t>& u = pruned.kept;

    // independent verification of the returned set
    std::size_t checked = 0, violations = 0;
    const bool exhaustive = choose_double(u.size(), params.r) <= kExhaustiveLimit;
    std::vector<std::size_t> verts(params.r), pick;
    if (static_cast<int>(u.size()) >= params.r) {
      if (exhaustive) {
        for_each_combination(u.size(), params.r, [&](std::span<const std::size_t> idx) {
          for (int i = 0; i < params.r; ++i) verts[i] = u[idx[i]];
          ++checked;
          if (static_cast<double>(codegree(g.adj, verts)) < params.m) ++violations;
          return true;
        });
      } else {
        for (std::size_t d = 0; d < kVerifyDraws; ++d) {
          sample_distinct(rng, u.size(), params.r, pick);
          for (int i = 0; i < params.r; ++i) verts[i] = u[pick[i]];
          ++checked;
          if (static_cast<double>(codegree(g.adj, verts)) < params.m) ++violations;
        }
      }
    }
    const bool ok = violations == 0 &&
                    static_cast<double>(u.size()) >= params.a;
    if (ok || u.size() > rep.best_size) {
      rep.subset = u;
      rep.best_size = u.size();
      rep.verification = exhaustive && !pruned.sampled ? "exhaustive" : "sampled";
      rep.subsets_checked = checked;
      rep.violations = violations;
    }
    if (ok) {
      rep.success = true;
      rep.attempts = attempt + 1;
      return rep;
    }
  }
  rep.attempts = retry_cap;
  return rep;
}

PropositionReport verify_proposition(const SimpleGraph& g, int p, int q, double eps,
                                     std::size_t sample_budget, std::uint64_t seed) {
  if (p < 1 || p >= q) throw std::invalid_argument("verify_proposition: need 1 <= p < q");
  if (eps <= 0.0 || eps >= 1.0) {
    throw std::invalid_argument("verify_proposition: eps must lie in (0, 1)");
  }
  PropositionReport rep;
  const double n = static_cast<double>(g.n);
  rep.density = g.density();
  rep.density_required = static_cast<double>(p) / q + eps;
  rep.density_ok = static_cast<double>(g.edges()) >=
                   rep.density_required * (n * (n - 1.0) / 2.0) - 1e-9;
  rep.size_ok = n >= 3.0 * q / eps;
  rep.u_bound = eps * n / 3.0;
  rep.codegree_bound = eps * n / (4.0 * choose_double(q, p + 1));
  if (!rep.density_ok || !rep.size_ok) return rep;  // rejected; density reported

  const double deg_threshold = (static_cast<double>(p) / q + eps / 2.0) * n;
  std::vector<std::size_t> u;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (static_cast<double>(g.degree(v)) >= deg_threshold) u.push_back(v);
  }
  rep.u_size = u.size();
  rep.u_ok = static_cast<double>(u.size()) >= rep.u_bound;

  std::vector<std::size_t> qsub(q), sub(p + 1);
  auto check_qsub = [&](std::span<const std::size_t> uidx) {
    for (int i = 0; i < q; ++i) qsub[i] = u[uidx[i]];
    bool good = false;
    for_each_combination(static_cast<std::size_t>(q), p + 1,
                         [&](std::span<const std::size_t> c) {
                           for (int i = 0; i <= p; ++i) sub[i] = qsub[c[i]];
                           if (static_cast<double>(codegree(g.adj, sub)) >=
                               rep.codegree_bound) {
                             good = true;
                             return false;
                           }
                           return true;
                         });
    ++rep.subsets_checked;
    if (!good) ++rep.violations;
  };
  if (u.size() >= static_cast<std::size_t>(q)) {
    const bool exhaustive = choose_double(u.size(), q) <= static_cast<double>(sample_budget);
    rep.mode = exhaustive ? "exhaustive" : "sampled";
    if (exhaustive) {
      for_each_combination(u.size(), q, [&](std::span<const std::size_t> idx) {
        check_qsub(idx);
        return true;
      });
    } else {
      SplitRng rng(derive_seed(seed, kPropStream));
      std::vector<std::size_t> pick;
      for (std::size_t d = 0; d < sample_budget; ++d) {
        sample_distinct(rng, u.size(), q, pick);
        std::sort(pick.begin(), pick.end());
        check_qsub(pick);
      }
    }
  } else {
    rep.mode = "exhaustive";
  }
  rep.pass = rep.u_ok && rep.violations == 0;
  return rep;
}

MeasureEstimate estimate_strip_measure(int k, double nu, std::size_t samples,
                                       std::uint64_t seed) {
  if (k < 3) throw std::invalid_argument("estimate_strip_measure: k must be >= 3");
  if (samples < 10'000) {
    throw std::invalid_argument("estimate_strip_measure: need at least 10^4 samples");
  }
  if (nu <= 0.0) throw std::invalid_argument("estimate_strip_measure: nu must be positive");
  const double h = nu / std::sqrt(2.0 * k);
  const std::size_t width = 2 * static_cast<std::size_t>(k);
  std::vector<double> x(width, 0.0);
  x[0] = 1.0;
  std::vector<double> y(width);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    sample_uniform_into(y, derive_seed(seed, kStripStream, i));
    const auto ip = inner(std::span<const double>(x), std::span<const double>(y));
    if (std::abs(ip.imag()) <= h) ++hits;
  }
  MeasureEstimate est;
  est.samples = samples;
  est.value = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  est.bound = 3.0 * nu;
  return est;
}

MeasureEstimate estimate_cap_measure(int k, double radius, std::size_t samples,
                                     std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("estimate_cap_measure: k must be >= 1");
  if (radius <= 0.0 || radius > 2.0) {
    throw std::invalid_argument("estimate_cap_measure: radius must lie in (0, 2]");
  }
  if (samples == 0) throw std::invalid_argument("estimate_cap_measure: need samples");
  const std::size_t width = 2 * static_cast<std::size_t>(k);
  std::vector<double> c(width, 0.0);
  c[0] = 1.0;
  std::vector<double> y(width);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    sample_uniform_into(y, derive_seed(seed, kCapStream, i));
    if (distance(c, y) <= radius) ++hits;
  }
  MeasureEstimate est;
  est.samples = samples;
  est.value = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  const double nu = (std::sqrt(2.0) - radius) * std::sqrt(2.0 * k);
  est.bound = 0.5 - std::sqrt(2.0) * nu;
  return est;
}

double strip_measure_exact(int k, double nu) {
  if (k < 1) throw std::invalid_argument("strip_measure_exact: k must be >= 1");
  if (nu <= 0.0) return 0.0;
  const double h = nu / std::sqrt(2.0 * k);
  if (h >= 1.0) return 1.0;
  return boost::math::ibeta(0.5, (2.0 * k - 1.0) / 2.0, h * h);
}

double cap_measure_exact(int k, double radius) {
  if (k < 1) throw std::invalid_argument("cap_measure_exact: k must be >= 1");
  if (radius <= 0.0) return 0.0;
  if (radius >= 2.0) return 1.0;
  const double tau = std::clamp(1.0 - radius * radius / 2.0, -1.0, 1.0);
  return cap_measure_from_colatitude(2 * k, std::acos(tau));
}

RichAuditReport rich_subgraph_audit(const SimpleGraph& g, int s, double eps,
                                    std::size_t sample_budget, std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("rich_subgraph_audit: s must be >= 1");
  if (sample_budget == 0) throw std::invalid_argument("rich_subgraph_audit: need a budget");
  RichAuditReport rep;
  rep.bound = eps * static_cast<double>(g.n);
  SplitRng rng(derive_seed(seed, kRichStream));

  const std::size_t words = g.adj.words();
  std::vector<char> in_w(g.n, 1);
  std::vector<std::size_t> w(g.n);
  for (std::size_t v = 0; v < g.n; ++v) w[v] = v;
  std::vector<std::uint64_t> wmask(words, 0), acc;
  auto rebuild = [&]() {
    w.clear();
    std::fill(wmask.begin(), wmask.end(), 0);
    for (std::size_t v = 0; v < g.n; ++v) {
      if (in_w[v]) {
        w.push_back(v);
        wmask[v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  };
  rebuild();
  auto codegree_in_w = [&](std::span<const std::size_t> verts) {
    and_rows(g.adj, verts, acc);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words; ++i) c += std::popcount(acc[i] & wmask[i]);
    return c;
  };
  auto degree_in_w = [&](std::size_t v) {
    const auto row = g.adj.row(v);
    std::size_t d = 0;
    for (std::size_t i = 0; i < words; ++i) d += std::popcount(row[i] & wmask[i]);
    return d;
  };

  std::vector<std::size_t> pick, verts(s);
  while (static_cast<int>(w.size()) >= s) {
    bool violated = false;
    for (std::size_t d = 0; d < sample_budget && !violated; ++d) {
      sample_distinct(rng, w.size(), s, pick);
      for (int i = 0; i < s; ++i) verts[i] = w[pick[i]];
      if (static_cast<double>(codegree_in_w(verts)) < rep.bound) {
        std::size_t worst = verts[0];
        std::size_t worst_deg = std::numeric_limits<std::size_t>::max();
        for (std::size_t v : verts) {
          const std::size_t dg = degree_in_w(v);
          if (dg < worst_deg) {
            worst_deg = dg;
            worst = v;
          }
        }
        in_w[worst] = 0;
        rebuild();
        violated = true;
      }
    }
    if (!violated) break;
  }

  if (static_cast<int>(w.size()) < s) {
    rep.mode = "exhaustive";
    return rep;  // nothing of size >= s survived; witness stays empty
  }
  const bool exhaustive = choose_double(w.size(), s) <= kExhaustiveLimit;
  rep.mode = exhaustive ? "exhaustive" : "sampled";
  if (exhaustive) {
    for_each_combination(w.size(), s, [&](std::span<const std::size_t> idx) {
      for (int i = 0; i < s; ++i) verts[i] = w[idx[i]];
      ++rep.subsets_checked;
      if (static_cast<double>(codegree_in_w(verts)) < rep.bound) ++rep.violations;
      return true;
    });
  } else {
    for (std::size_t d = 0; d < kVerifyDraws; ++d) {
      sample_distinct(rng, w.size(), s, pick);
      for (int i = 0; i < s; ++i) verts[i] = w[pick[i]];
      ++rep.subsets_checked;
      if (static_cast<double>(codegree_in_w(verts)) < rep.bound) ++rep.violations;
    }
  }
  rep.certified = rep.violations == 0;
  rep.witness = w;
  return rep;
}

}  // namespace qpc
