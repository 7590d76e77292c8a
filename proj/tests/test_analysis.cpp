#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpcolor/analysis.hpp"
#include "qpcolor/coloring.hpp"
#include "qpcolor/rng.hpp"

using namespace qpc;

namespace {

SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g(n, "complete");
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.adj.set_pair(u, v);
  }
  return g;
}

std::size_t brute_codegree(const SimpleGraph& g, const std::vector<std::size_t>& s) {
  std::size_t count = 0;
  for (std::size_t w = 0; w < g.n; ++w) {
    bool all = true;
    for (const std::size_t v : s) all = all && g.adjacent(v, w);
    count += all ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("bit matrix basics") {
  BitMatrix m(70);
  CHECK(m.edge_count() == 0);
  m.set_pair(0, 69);
  CHECK(m.test(0, 69));
  CHECK(m.test(69, 0));
  CHECK(m.edge_count() == 1);
  m.set_pair(3, 4);
  CHECK(m.row_popcount(3) == 1);
  CHECK(m.row_popcount_range(0, 64, 70) == 1);
  CHECK(m.row_popcount_range(0, 0, 64) == 0);
  m.clear_pair(0, 69);
  CHECK_FALSE(m.test(0, 69));
  BitMatrix c = m;
  c.complement();
  CHECK(c.edge_count() == 70 * 69 / 2 - 1);
  CHECK_FALSE(c.test(3, 4));
  CHECK_FALSE(c.test(5, 5));  // diagonal stays empty
  c.complement();
  CHECK(c == m);
  std::vector<std::uint64_t> out;
  CHECK_THROWS_AS(and_rows(m, {}, out), std::invalid_argument);
}

TEST_CASE("row popcount ranges agree with scanning") {
  SplitRng rng(5);
  BitMatrix m(130);
  for (int e = 0; e < 600; ++e) {
    const auto u = rng.uniform_below(130), v = rng.uniform_below(130);
    if (u != v) m.set_pair(u, v);
  }
  for (std::size_t i = 0; i < 130; i += 7) {
    for (const auto& [lo, hi] :
         std::vector<std::pair<std::size_t, std::size_t>>{{0, 130}, {5, 64}, {64, 128}, {63, 65}, {100, 100}}) {
      std::size_t want = 0;
      for (std::size_t j = lo; j < hi; ++j) want += m.test(i, j) ? 1 : 0;
      CHECK(m.row_popcount_range(i, lo, hi) == want);
    }
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(5, 9) == 0);
  CHECK(binomial(52, 5) == 2598960);
}

TEST_CASE("hypercube graphs") {
  CHECK_THROWS_AS(build_hypercube(0), std::invalid_argument);
  CHECK_THROWS_AS(build_hypercube(25), std::length_error);

  const auto h2 = build_hypercube(2);
  CHECK(h2.n == 4);
  CHECK(h2.edges() == 4);  // Hamming distance exactly 1
  CHECK(h2.density() == doctest::Approx(2.0 / 3.0));

  const auto h4 = build_hypercube(4);
  for (std::size_t v = 0; v < h4.n; ++v) CHECK(h4.degree(v) == 10);
  const auto f4 = hypercube_density(4);
  CHECK(f4.num * 3 == 2 * f4.den);  // reduces to 2/3

  const auto h6 = build_hypercube(6);
  for (std::size_t v = 0; v < h6.n; ++v) CHECK(h6.degree(v) == 41);
  const auto f6 = hypercube_density(6);
  CHECK(f6.num == 41);
  CHECK(f6.den == 63);
  CHECK(h6.edges() * f6.den == f6.num * (h6.n * (h6.n - 1) / 2));

  // Codegree of an antipodal vertex pair in the m=4 graph: both neighbors
  // at Hamming distance <= 2 from each endpoint, i.e. distance 2 from both.
  const auto co = codegree(h4, std::size_t{0}, h4.n - 1);
  CHECK(co == 6);  // C(4,2) middle layers

  // Density decreases strictly toward 1/2 over even m.
  for (int m = 4; m + 2 <= 20; m += 2) {
    const auto a = hypercube_density(m);
    const auto b = hypercube_density(m + 2);
    CHECK(a.num * b.den > b.num * a.den);
    CHECK(2 * b.num > b.den);  // still above 1/2
  }
}

TEST_CASE("random graphs are deterministic in the seed") {
  const auto a = build_random_graph(50, 0.3, 1);
  const auto b = build_random_graph(50, 0.3, 1);
  const auto c = build_random_graph(50, 0.3, 2);
  CHECK(a == b);
  CHECK_FALSE(a.adj == c.adj);
  const double d = a.density();
  CHECK(d > 0.15);
  CHECK(d < 0.45);
  const auto comp = complement(a);
  CHECK(comp.edges() + a.edges() == 50 * 49 / 2);
}

TEST_CASE("codegree equals the brute force count") {
  const auto path3 = [] {
    SimpleGraph g(3, "path");
    g.adj.set_pair(0, 1);
    g.adj.set_pair(1, 2);
    return g;
  }();
  CHECK(codegree(path3, 0, 2) == 1);
  CHECK(codegree(path3, 0, 1) == 0);

  const auto kn = complete_graph(9);
  CHECK(codegree(kn, 2, 7) == 7);
  CHECK(codegree(kn, std::vector<std::size_t>{1, 2, 3}) == 6);

  const auto g = build_random_graph(40, 0.5, 3);
  SplitRng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> s;
    for (int i = 0; i < 3; ++i) s.push_back(rng.uniform_below(40));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    CHECK(codegree(g, s) == brute_codegree(g, s));
  }
}

TEST_CASE("mean pair codegree on a complete graph") {
  const auto kn = complete_graph(5);
  CHECK(mean_pair_codegree(kn, 200, 1) == doctest::Approx(3.0));
  CHECK(mean_pair_codegree(kn, 200, 1) == mean_pair_codegree(kn, 200, 1));
}

TEST_CASE("rotated distance of planted configurations") {
  // q=3, k=1: points 1, zeta^2, zeta form an exact rotation tuple.
  FamilyParams params{1, 3, 1, 1, 0.1, 6, PointMode::sampled};
  auto fam = SphereFamily::generate(params, {5});
  const auto z1 = zeta_power(1, 3), z2 = zeta_power(2, 3);
  fam.set_point(0, UnitVector({1.0, 0.0}));
  fam.set_point(1, UnitVector({z2.real(), z2.imag()}));
  fam.set_point(2, UnitVector({z1.real(), z1.imag()}));
  const std::vector<std::size_t> tuple{0, 1, 2};
  CHECK(max_rotated_distance(fam, tuple) < 1e-12);
  // A non-tuple is far.
  const std::vector<std::size_t> scrambled{0, 2, 1};
  CHECK(max_rotated_distance(fam, scrambled) > 0.5);

  const auto found = find_rotation_tuple(fam, {}, 0.1);
  REQUIRE(found.has_value());
  CHECK(found->sphere == 0);
  CHECK(found->max_rotated_distance < 1e-9);
  CHECK(found->vertices == tuple);
}

TEST_CASE("antipodal pairs are the q=2 rotation tuples") {
  FamilyParams params{1, 2, 3, 2, 0.1, 14, PointMode::sampled};
  auto fam = SphereFamily::generate(params, {30, 30});
  const auto u = fam.point_vector(40);
  auto minus = u;
  rotate_in_place(minus.raw(), 1, 2);
  fam.set_point(47, minus);
  const auto found = find_rotation_tuple(fam, {}, 1e-6);
  REQUIRE(found.has_value());
  CHECK(found->sphere == 1);
  std::vector<std::size_t> got = found->vertices;
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::size_t>{40, 47});
  CHECK(found->max_rotated_distance < 1e-12);

  // Restricting candidates away from the plant finds nothing.
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < 60; ++v) {
    if (v != 40 && v != 47) others.push_back(v);
  }
  CHECK_FALSE(find_rotation_tuple(fam, others, 1e-6).has_value());
}

TEST_CASE("no rotation tuple among few random points at a tight threshold") {
  FamilyParams params{1, 3, 6, 1, 0.1, 23, PointMode::sampled};
  const auto fam = SphereFamily::generate(params, {50});
  CHECK_FALSE(find_rotation_tuple(fam, {}, 0.05).has_value());
}

TEST_CASE("planted tuple codegree audit") {
  const int q = 3;
  auto built = build_construction1(1, q, 4, 2, 60, 0.1, 77);
  auto& fam = built.family;
  const auto u = fam.point_vector(0);
  for (int r = 1; r < q; ++r) {
    fam.set_point(static_cast<std::size_t>(r), rotate(u, -r, q));
  }
  const auto col = color_from_family(fam, 1, q);
  const auto tuple = find_rotation_tuple(fam, {}, 1e-6);
  REQUIRE(tuple.has_value());
  CHECK(tuple->vertices == std::vector<std::size_t>{0, 1, 2});

  for (int f = 0; f < q; ++f) {
    const auto rep = audit_tuple_codegree(col, f, *tuple, 0.05);
    CHECK(rep.subsets_checked == 3);  // C(3,2) pairs
    CHECK(rep.bound == doctest::Approx(0.05 * 120));
    // Exact rotations at adjacent slots share no neighbors in any class.
    CHECK(rep.max_codegree == 0);
    CHECK(rep.pass);
    CHECK(rep.has_pigeonhole_pair);
    const int diff = rep.pigeonhole_s - rep.pigeonhole_r;
    CHECK(diff >= col.p);
    CHECK(diff <= col.q - col.p);
    // The report's numbers match a direct recount.
    const auto g = col.color_class(f);
    for (const std::size_t cd : rep.subset_codegrees) {
      CHECK(cd <= rep.max_codegree);
    }
    CHECK(brute_codegree(g, rep.worst_subset) == rep.max_codegree);
  }
}

TEST_CASE("phase margin set excludes the pivot itself") {
  FamilyParams params{1, 3, 4, 2, 0.1, 19, PointMode::sampled};
  const auto fam = SphereFamily::generate(params, {25, 25});
  const auto x = fam.point_vector(12);
  const auto j0 = compute_J_set(fam, x, 0.0);
  CHECK(j0.size() == fam.total() - 1);
  CHECK(std::find(j0.begin(), j0.end(), 12) == j0.end());
  // An impossible margin empties the set.
  CHECK(compute_J_set(fam, x, 0.5).empty());
}

TEST_CASE("centroid pairing checks") {
  const int q = 3, k = 2;
  FamilyParams params{1, q, k, 2, 0.1, 3, PointMode::sampled};
  auto fam = SphereFamily::generate(params, {10, 10});
  const auto u = fam.point_vector(0);
  fam.set_point(1, rotate(u, -1, q));
  fam.set_point(2, rotate(u, -2, q));
  // u' = zeta^{-ell} u planted across the sphere boundary.
  const int ell = 1;
  fam.set_point(10, u);
  fam.set_point(11, rotate(u, -ell, q));

  const std::vector<std::size_t> tuple{0, 1, 2};
  const auto rep = centroid_pairing_check(fam, tuple, 10, 11, ell, 0.01);
  CHECK(rep.sum_norm < 1e-12);        // exact tuple telescopes to zero
  CHECK(rep.inner_modulus < 1e-12);   // u - zeta^ell u' vanishes exactly
  CHECK(rep.sum_bound == doctest::Approx(2.0 * q * std::sqrt(0.01)));
  CHECK(rep.inner_bound == doctest::Approx(0.04));
  CHECK(rep.pass);

  // Perturbing one tuple member moves the sum by at most the perturbation.
  auto moved = fam.point_vector(1);
  moved.raw()[0] += 0.05;
  fam.set_point(1, UnitVector::normalized(moved.raw()));
  const auto rep2 = centroid_pairing_check(fam, tuple, 10, 11, ell, 0.01);
  CHECK(rep2.sum_norm > 0.0);
  CHECK(rep2.sum_norm < 0.2);
}

TEST_CASE("min cross degree") {
  const auto built = build_construction1(1, 2, 8, 2, 40, 0.1, 10);
  const auto& col = built.coloring;
  for (int f = 0; f < 2; ++f) {
    std::size_t want = 40;
    for (std::size_t v = 0; v < 40; ++v) {
      std::size_t deg = 0;
      for (std::size_t w = 40; w < 80; ++w) deg += col.color[f].test(v, w) ? 1 : 0;
      want = std::min(want, deg);
    }
    CHECK(min_cross_degree(col, f, 0, 1) == want);
  }
  CHECK_THROWS_AS(min_cross_degree(col, 0, 1, 1), std::invalid_argument);
  SetColoring originless(10, 1, 2);
  CHECK_THROWS_AS(min_cross_degree(originless, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("cross bipartite mismatch counting") {
  const auto built = build_construction1(1, 3, 3, 2, 15, 0.1, 44);
  const auto col = built.coloring;
  CHECK(cross_bipartite_mismatches(col, 0, col, 0, 0) == 0);
  CHECK(cross_bipartite_mismatches(col, 0, col, 0, 1) == 0);
  // Different classes of one coloring disagree on as many cross pairs as
  // they have distinct cross edges (single-class membership when p=1).
  const std::size_t m01 = cross_bipartite_mismatches(col, 0, col, 1, 0);
  CHECK(m01 == col.cross_edges(0) + col.cross_edges(1));
}

TEST_CASE("dependent random choice on friendly graphs") {
  const auto kn = complete_graph(20);
  DrcParams p{2, 2, 5.0, 10.0};
  const auto rep = drc_rich_subset(kn, p, 123);
  CHECK(rep.success);
  CHECK(rep.attempts == 1);
  CHECK(rep.violations == 0);
  CHECK(rep.verification == "exhaustive");
  CHECK(rep.best_size >= 18);
  CHECK(rep.guarantee == doctest::Approx(19.0 * 19.0 / 20.0 - binomial(20, 2) * 0.0625));
  // Every returned vertex pair really has codegree >= m.
  for (std::size_t i = 0; i < rep.subset.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.subset.size(); ++j) {
      CHECK(codegree(kn, rep.subset[i], rep.subset[j]) >= 5);
    }
  }
}

TEST_CASE("dependent random choice fails honestly on empty graphs") {
  SimpleGraph empty(30, "empty");
  DrcParams p{2, 2, 1.0, 5.0};
  const auto rep = drc_rich_subset(empty, p, 9, 10);
  CHECK_FALSE(rep.success);
  CHECK(rep.attempts == 10);
  CHECK(rep.best_size < 5);
  CHECK_FALSE(rep.guaranteed);
}

TEST_CASE("dependent random choice on dense random graphs") {
  const auto g = build_random_graph(100, 0.5, 4);
  DrcParams p{2, 2, 5.0, 12.0};
  const auto rep = drc_rich_subset(g, p, 4);
  CHECK(rep.success);
  CHECK(rep.verification == "exhaustive");
  CHECK(rep.violations == 0);
  CHECK(rep.guarantee ==
        doctest::Approx(rep.average_degree * rep.average_degree / 100.0 - 4950.0 * 0.0025));
  const auto again = drc_rich_subset(g, p, 4);
  CHECK(again.subset == rep.subset);
  CHECK(again.attempts == rep.attempts);
}

TEST_CASE("degree proposition verifier accepts complete graphs") {
  const auto kn = complete_graph(60);
  const auto rep = verify_proposition(kn, 1, 2, 0.1, 1000, 5);
  CHECK(rep.density == doctest::Approx(1.0));
  CHECK(rep.density_ok);
  CHECK(rep.size_ok);
  CHECK(rep.u_size == 60);
  CHECK(rep.u_ok);
  CHECK(rep.violations == 0);
  CHECK(rep.pass);
  CHECK(rep.codegree_bound == doctest::Approx(0.1 * 60 / 4.0));
}

TEST_CASE("degree proposition verifier rejects sparse graphs up front") {
  const auto g = build_random_graph(100, 0.3, 8);
  const auto rep = verify_proposition(g, 1, 2, 0.1, 1000, 5);
  CHECK_FALSE(rep.density_ok);
  CHECK_FALSE(rep.pass);
  CHECK(rep.density == doctest::Approx(g.density()));
  CHECK(rep.density_required == doctest::Approx(0.6));
}

TEST_CASE("strip measure estimates agree with the closed form") {
  for (const auto& [k, nu] : std::vector<std::pair<int, double>>{{8, 0.1}, {16, 0.3}, {3, 0.05}}) {
    const auto est = estimate_strip_measure(k, nu, 100000, 7);
    const double exact = strip_measure_exact(k, nu);
    CHECK(est.bound == doctest::Approx(3.0 * nu));
    CHECK(est.value <= est.bound);
    CHECK(std::abs(est.value - exact) <= 5.0 * est.std_error + 1e-12);
    CHECK(est.std_error ==
          doctest::Approx(std::sqrt(est.value * (1.0 - est.value) / 100000.0)));
  }
  CHECK(strip_measure_exact(3, 10.0) == 1.0);      // strip wider than the sphere
  CHECK(strip_measure_exact(8, 0.0) == 0.0);
  CHECK_THROWS_AS(estimate_strip_measure(2, 0.1, 100000, 7), std::invalid_argument);
  CHECK_THROWS_AS(estimate_strip_measure(8, 0.1, 100, 7), std::invalid_argument);
}

TEST_CASE("cap measure estimates agree with the closed form") {
  CHECK(cap_measure_exact(4, 2.0) == doctest::Approx(1.0));
  CHECK(cap_measure_exact(4, std::sqrt(2.0)) == doctest::Approx(0.5));
  CHECK(cap_measure_exact(4, 0.7) < cap_measure_exact(4, 1.0));
  for (const double radius : {1.0, 1.2, std::sqrt(2.0)}) {
    const auto est = estimate_cap_measure(8, radius, 100000, 11);
    const double exact = cap_measure_exact(8, radius);
    CHECK(std::abs(est.value - exact) <= 5.0 * est.std_error + 1e-12);
  }
  // Radius matching nu = 0.1: the half-minus-nu lower bound holds.
  const int k = 8;
  const double nu = 0.1;
  const double radius = std::sqrt(2.0) - nu / std::sqrt(2.0 * k);
  const auto est = estimate_cap_measure(k, radius, 100000, 13);
  CHECK(est.bound == doctest::Approx(0.5 - std::sqrt(2.0) * nu));
  CHECK(est.value >= est.bound - 4.0 * est.std_error);
}

TEST_CASE("rich subgraph audit certifies complete graphs and rejects empty ones") {
  const auto kn = complete_graph(30);
  const auto rep = rich_subgraph_audit(kn, 3, 0.2, 2000, 21);
  CHECK(rep.witness.size() == 30);
  CHECK(rep.certified);
  CHECK(rep.mode == "exhaustive");
  CHECK(rep.violations == 0);
  CHECK(rep.bound == doctest::Approx(6.0));

  SimpleGraph empty(20, "empty");
  const auto bad = rich_subgraph_audit(empty, 2, 0.5, 500, 3);
  CHECK(bad.witness.empty());
  CHECK_FALSE(bad.certified);
}
