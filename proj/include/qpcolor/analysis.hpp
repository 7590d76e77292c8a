#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpcolor/coloring.hpp"
#include "qpcolor/graph.hpp"

namespace qpc {

// |common neighborhood of s| via bitwise AND of adjacency rows.  Members of
// s are counted only when adjacent to all of s (never to themselves, so in
// practice they are excluded).  Throws std::invalid_argument on empty s.
std::size_t codegree(const BitMatrix& adj, std::span<const std::size_t> s);
std::size_t codegree(const SimpleGraph& g, std::span<const std::size_t> s);
std::size_t codegree(const SimpleGraph& g, std::size_t u, std::size_t v);

// Average codegree over `samples` uniform unordered pairs of distinct
// vertices (baseline for comparing planted configurations against).
double mean_pair_codegree(const SimpleGraph& g, std::size_t samples, std::uint64_t seed);

// q vertices of one sphere, vertex at position r playing the role of the
// point with phase offset -r: position r holds approximately zeta^{-r} times
// the position-0 point.  max_rotated_distance is the maximum over ordered
// positions (r, s) of |u_r - zeta^{s-r} u_s|.
struct RotationTuple {
  int sphere = 0;
  std::vector<std::size_t> vertices;
  double max_rotated_distance = 0.0;
};

// Recompute a tuple's defining quantity from the family's points; the span
// must hold exactly q vertex ids.
double max_rotated_distance(const SphereFamily& family, std::span<const std::size_t> vertices);

// Depth-first search per sphere for q distinct candidate vertices whose
// phase-rotated copies zeta^r u_r all lie within `threshold` of each other
// (pairwise pruning through inner products, so every rotated distance is
// tested exactly); candidates may be empty, meaning all vertices.  Every
// returned tuple passes max_rotated_distance < threshold by recomputation;
// none is returned only when no such tuple exists.
std::optional<RotationTuple> find_rotation_tuple(const SphereFamily& family,
                                                 std::span<const std::size_t> candidates,
                                                 double threshold);

struct TupleCodegreeReport {
  std::size_t max_codegree = 0;
  std::vector<std::size_t> worst_subset;    // vertex ids of the maximizing subset
  std::vector<std::size_t> subset_codegrees;  // one entry per enumerated subset
  double bound = 0.0;                       // eps * N
  bool pass = false;                        // max_codegree < bound
  bool has_pigeonhole_pair = false;         // positions r < s with s - r in [p, q-p]
  int pigeonhole_r = 0;
  int pigeonhole_s = 0;
  std::size_t pigeonhole_u = 0;
  std::size_t pigeonhole_v = 0;
  std::size_t subsets_checked = 0;
};

// Codegree in color class f of every (p+1)-subset of the tuple's vertices,
// reported against eps * N; also exhibits a pair of tuple positions at
// offset p..q-p inside the maximizing subset when one exists (always, for
// p/q <= 1/2).
TupleCodegreeReport audit_tuple_codegree(const SetColoring& coloring, int f,
                                         const RotationTuple& tuple, double eps);

// Vertices v with |Im(zeta^s <v, x>)| > 3*mu for every s mod q (strict, so
// mu = 0 keeps exactly the vertices no rotation of which is purely real).
std::vector<std::size_t> compute_J_set(const SphereFamily& family, const UnitVector& x,
                                       double mu);

struct CentroidPairingReport {
  double sum_norm = 0.0;       // |w_0 + ... + w_{q-1}|
  double sum_bound = 0.0;      // 2 q sqrt(mu)
  double inner_modulus = 0.0;  // |<centroid, u - zeta^ell u'>|
  double inner_bound = 0.0;    // 4 mu
  bool pass = false;
};

// For a near-rotation tuple w_0..w_{q-1} the point sum nearly telescopes
// (1 + zeta + ... + zeta^{q-1} = 0), so the centroid is nearly orthogonal
// to every fixed vector; checked here against u - zeta^ell u'.
CentroidPairingReport centroid_pairing_check(const SphereFamily& family,
                                             std::span<const std::size_t> tuple,
                                             std::size_t u, std::size_t u_prime, int ell,
                                             double mu);

// Exact minimum over vertices of sphere j of their color-f neighbor count
// inside sphere h.  Requires vertex origins; throws std::invalid_argument
// otherwise or when j == h.
std::size_t min_cross_degree(const SetColoring& coloring, int f, int j, int h);

// Number of pairs (u in the given sphere, v outside it) whose membership in
// class fa of `a` differs from class fb of `b`.  Both colorings must carry
// identical vertex origins.
std::size_t cross_bipartite_mismatches(const SetColoring& a, int fa, const SetColoring& b,
                                       int fb, int sphere);

// Knobs of the rich-subset procedure: pick t_exponent random vertices, take
// their common neighborhood, prune r-subsets with codegree below m, succeed
// when at least a vertices survive.
struct DrcParams {
  int t_exponent = 2;
  int r = 2;
  double m = 0.0;
  double a = 0.0;
};

struct DrcReport {
  DrcParams params;
  std::size_t n = 0;
  double average_degree = 0.0;
  double guarantee = 0.0;   // d^t / n^(t-1) - C(n,r) (m/n)^t
  bool guaranteed = false;  // guarantee >= a
  bool success = false;
  int attempts = 0;
  std::vector<std::size_t> subset;  // best verified subset found
  std::size_t best_size = 0;
  std::string verification;  // "exhaustive" | "sampled"
  std::size_t subsets_checked = 0;
  std::size_t violations = 0;  // r-subsets of the returned set below m
};

// Dependent random choice with greedy bad-subset deletion (the deleted
// vertex is the one lying in the most bad subsets found).  The returned
// subset is always re-verified: exhaustively when it has at most 10^6
// r-subsets, otherwise by 10^5 sampled ones (flagged "sampled").
DrcReport drc_rich_subset(const SimpleGraph& g, const DrcParams& params, std::uint64_t seed,
                          int retry_cap = 50);

struct PropositionReport {
  double density = 0.0;
  double density_required = 0.0;  // p/q + eps
  bool density_ok = false;
  bool size_ok = false;  // n >= 3 q / eps
  std::size_t u_size = 0;
  double u_bound = 0.0;  // eps n / 3
  bool u_ok = false;
  double codegree_bound = 0.0;  // eps n / (4 C(q, p+1))
  std::string mode;             // "exhaustive" | "sampled"
  std::size_t subsets_checked = 0;
  std::size_t violations = 0;  // q-subsets with no good (p+1)-subset
  bool pass = false;
};

// Takes U = vertices of degree at least (p/q + eps/2) n, checks
// |U| >= eps n / 3, and verifies that sampled (or all, when few enough)
// q-subsets of U contain p+1 vertices of codegree at least the bound.
PropositionReport verify_proposition(const SimpleGraph& g, int p, int q, double eps,
                                     std::size_t sample_budget, std::uint64_t seed);

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sqrt(value (1-value) / samples)
  std::size_t samples = 0;
  double bound = 0.0;  // analytic bound the estimate is tested against
};

// Monte Carlo measure of {y : |Im<x, y>| <= nu / sqrt(2k)} for a fixed unit
// x (rotation invariance makes the choice irrelevant); bound = 3 nu.
// Requires k >= 3 and samples >= 10^4.
MeasureEstimate estimate_strip_measure(int k, double nu, std::size_t samples,
                                       std::uint64_t seed);

// Monte Carlo measure of the cap {y : |c - y| <= radius}, radius in (0, 2];
// bound = 1/2 - sqrt(2) nu for the nu solving radius = sqrt(2) - nu/sqrt(2k)
// (a lower bound when radius <= sqrt(2)).
MeasureEstimate estimate_cap_measure(int k, double radius, std::size_t samples,
                                     std::uint64_t seed);

// Closed forms of the same measures through the one-coordinate density
// c (1 - t^2)^((2k-3)/2), i.e. regularized incomplete beta functions.
double strip_measure_exact(int k, double nu);
double cap_measure_exact(int k, double radius);

struct RichAuditReport {
  std::vector<std::size_t> witness;  // vertex set whose induced subgraph was kept
  bool certified = false;            // final check found no violations and |W| >= s
  std::string mode;                  // "exhaustive" | "sampled"
  std::size_t subsets_checked = 0;
  std::size_t violations = 0;
  double bound = 0.0;  // eps * N common-neighbor requirement
};

// Greedy peeling toward an induced subgraph every s vertices of which have
// at least eps*N common neighbors inside it: sampled violating s-subsets
// lose their weakest member until none is found, then the survivor set is
// certified (sets smaller than s count as empty).
RichAuditReport rich_subgraph_audit(const SimpleGraph& g, int s, double eps,
                                    std::size_t sample_budget, std::uint64_t seed);

}  // namespace qpc
