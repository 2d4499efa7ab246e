#include "polproj/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace polproj::verify {

using proj::ChamberPerm;
using proj::Chain;

namespace {

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string mode_name(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "sampled"; }

std::string loop_key(const ChamberPerm& cp) {
  std::string k(reinterpret_cast<const char*>(cp.elem.data()), cp.elem.size() * 4);
  k.push_back(static_cast<char>(cp.parity));
  return k;
}

// Incremental tagged group with a batch stability window.
class LoopGroup {
public:
  explicit LoopGroup(const ResiduePtr& R)
      : R_(R),
        G_(std::make_shared<PermGroup>(R->chamber_count() + 2, std::vector<permgrp::Perm>{},
                                       std::vector<int>{R->chamber_count()})) {}

  bool add(const ChamberPerm& cp) {
    if (!seen_.insert(loop_key(cp)).second) return false;
    gens_.push_back(cp);
    return G_->add_generator(tag_extended(cp));
  }

  // Returns true when the order has been stable for `window` calls.
  bool note_batch(int window) {
    BigUint o = G_->order();
    if (o == last_) {
      ++stable_;
    } else {
      last_ = o;
      stable_ = 0;
    }
    return stable_ >= window;
  }

  GroupResult result() const {
    GroupResult r = group_accounting(R_, G_);
    r.gens = gens_;
    return r;
  }

  static GroupResult group_accounting(const ResiduePtr& R, std::shared_ptr<PermGroup> G) {
    GroupResult r;
    r.residue = R;
    r.gstar = std::move(G);
    const int N = R->chamber_count();
    auto orbit = r.gstar->orbit_of(N);
    bool orbit2 = orbit.size() == 2;
    permgrp::Perm T = permgrp::perm_identity(N + 2);
    std::swap(T[N], T[N + 1]);
    r.parity_collapse = orbit2 && r.gstar->contains(T);
    r.order_pi = r.gstar->order();
    if (r.parity_collapse) r.order_pi.div_u32(2);
    r.order_pi_plus = r.gstar->order();
    if (orbit2) r.order_pi_plus.div_u32(2);
    r.index12 = (orbit2 && !r.parity_collapse) ? 2 : 1;
    return r;
  }

  const ResiduePtr& residue() const { return R_; }
  std::shared_ptr<PermGroup> group() { return G_; }
  size_t gen_count() const { return gens_.size(); }

private:
  ResiduePtr R_;
  std::shared_ptr<PermGroup> G_;
  std::vector<ChamberPerm> gens_;
  std::unordered_set<std::string> seen_;
  BigUint last_{0};
  int stable_ = 0;
};

// Composable element maps between residues along tree paths.
struct TreeMaps {
  std::vector<std::vector<int32_t>> to_node; // Res(F) elements -> Res(node) elements
};

std::vector<int32_t> compose_maps(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
  std::vector<int32_t> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

std::vector<int32_t> invert_map(const std::vector<int32_t>& a) {
  std::vector<int32_t> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int32_t>(i);
  return r;
}

} // namespace

permgrp::Perm tag_extended(const ChamberPerm& cp) {
  const int N = static_cast<int>(cp.chamber.size());
  permgrp::Perm g(N + 2);
  for (int i = 0; i < N; ++i) g[i] = cp.chamber[i];
  if (cp.parity % 2 == 1) {
    g[N] = N + 1;
    g[N + 1] = N;
  } else {
    g[N] = N;
    g[N + 1] = N + 1;
  }
  return g;
}

OppositionGraph build_opposition_graph(PolarSpace& P, const Subspace& F) {
  OppositionGraph G;
  const int d = F.k - 1;
  G.nodes = P.singular_subspaces(d);
  const int n = static_cast<int>(G.nodes.size());
  G.perps.reserve(n);
  for (const Subspace& X : G.nodes) G.perps.push_back(P.perp(X));
  G.root = -1;
  for (int i = 0; i < n; ++i)
    if (G.nodes[i] == F) { G.root = i; break; }
  if (G.root < 0) raise(Errc::BadDimension, "base subspace is not singular of this dimension");

  G.parent.assign(n, -1);
  G.depth.assign(n, -1);
  G.in_component.assign(n, 0);
  G.depth[G.root] = 0;
  G.in_component[G.root] = 1;
  G.bfs_order.push_back(G.root);
  for (size_t head = 0; head < G.bfs_order.size(); ++head) {
    int x = G.bfs_order[head];
    for (int y = 0; y < n; ++y) {
      if (G.in_component[y]) continue;
      if (!P.is_opposite_with_perp(G.nodes[x], G.perps[y])) continue;
      G.in_component[y] = 1;
      G.parent[y] = x;
      G.depth[y] = G.depth[x] + 1;
      G.bfs_order.push_back(y);
    }
  }
  G.component_size = G.bfs_order.size();
  G.connected = G.component_size == static_cast<size_t>(n);
  return G;
}

bool OppositionGraph::is_edge(PolarSpace& P, int i, int j) const {
  return i != j && P.is_opposite_with_perp(nodes[i], perps[j]);
}

GroupResult projectivity_group(PolarSpace& P, const Subspace& F, Side side,
                               const GenOptions& opt) {
  OppositionGraph G = build_opposition_graph(P, F);
  if (!G.connected && !opt.allow_disconnected)
    raise(Errc::DisconnectedOppositionGraph,
          "opposition graph disconnected: " + std::to_string(G.component_size) + " of " +
              std::to_string(G.nodes.size()) + " nodes reachable");

  ResiduePtr RF = P.residue(F, side);
  if (RF->chamber_count() == 0)
    raise(Errc::BadDimension, "residue has no chambers (empty upper residue of a maximal)");

  // element maps Res(F) -> Res(node) along tree paths
  std::vector<std::vector<int32_t>> tree(G.nodes.size());
  {
    std::vector<int32_t> id(RF->elem_count());
    for (int i = 0; i < RF->elem_count(); ++i) id[i] = i;
    tree[G.root] = std::move(id);
  }
  for (size_t h = 1; h < G.bfs_order.size(); ++h) {
    int x = G.bfs_order[h];
    int px = G.parent[x];
    proj::CrossMap step = proj::perspectivity(P, G.nodes[px], G.nodes[x], side);
    tree[x] = compose_maps(tree[px], step.elem);
  }

  auto loop_of_chord = [&](std::pair<int, int> e) {
    auto [a, b] = e;
    proj::CrossMap step = proj::perspectivity(P, G.nodes[a], G.nodes[b], side);
    ChamberPerm cp;
    cp.R = RF;
    cp.elem = compose_maps(compose_maps(tree[a], step.elem), invert_map(tree[b]));
    cp.parity = (G.depth[a] + 1 + G.depth[b]) % 2;
    cp.type_reversing = side == Side::Lower && cp.parity == 1;
    cp.chamber = proj::chamber_action(*RF, cp.elem, cp.type_reversing);
    return cp;
  };

  LoopGroup LG(RF);
  size_t used = 0, total = 0;
  const int n = static_cast<int>(G.nodes.size());
  if (opt.mode == Mode::Exhaustive) {
    for (int i = 0; i < n && used < opt.max_generators; ++i) {
      if (!G.in_component[i]) continue;
      for (int j = i + 1; j < n && used < opt.max_generators; ++j) {
        if (!G.in_component[j] || G.is_tree_edge(i, j)) continue;
        if (!G.is_edge(P, i, j)) continue;
        ++total;
        LG.add(loop_of_chord({i, j}));
        ++used;
      }
    }
  } else {
    // chords drawn lazily with a seeded generator, until the order is stable
    std::mt19937_64 rng(opt.seed);
    std::unordered_set<uint64_t> drawn;
    int in_batch = 0;
    size_t misses = 0;
    const size_t max_misses = 200000;
    while (misses < max_misses && used < opt.max_generators) {
      int i = G.bfs_order[rng() % G.bfs_order.size()];
      int j = G.bfs_order[rng() % G.bfs_order.size()];
      if (i == j || G.is_tree_edge(i, j)) { ++misses; continue; }
      if (i > j) std::swap(i, j);
      uint64_t key = (static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(j);
      if (!drawn.insert(key).second) { ++misses; continue; }
      if (!G.is_edge(P, i, j)) { ++misses; continue; }
      LG.add(loop_of_chord({i, j}));
      ++used;
      if (++in_batch == opt.batch) {
        in_batch = 0;
        if (LG.note_batch(opt.stability_window)) break;
      }
    }
  }
  GroupResult r = LG.result();
  r.connected = G.connected;
  r.nodes = G.nodes.size();
  r.chords_total = total;
  r.chords_used = used;
  r.mode_used = opt.mode;
  return r;
}

GroupResult group_from_loops(const ResiduePtr& R, const std::vector<ChamberPerm>& loops) {
  LoopGroup LG(R);
  for (const auto& cp : loops) LG.add(cp);
  return LG.result();
}

PermGroup even_subgroup_on_chambers(const GroupResult& g) {
  const int N = g.residue->chamber_count();
  std::vector<permgrp::Perm> gens;
  for (const permgrp::Perm& s : g.gstar->stabilizer_gens(1)) {
    permgrp::Perm r(N);
    for (int i = 0; i < N; ++i) r[i] = s[i];
    gens.push_back(std::move(r));
  }
  return PermGroup(N, gens);
}

std::set<Fe> norm_set(const forms::FormSpec& S) {
  if (S.kind() == forms::Kind::Symplectic)
    raise(Errc::WrongKind, "norm set needs a quadratic or Hermitian form");
  const gf::Field& F = *S.field();
  const unsigned q = F.q();
  const int c = S.corank();
  size_t vtotal = 1;
  for (int i = 0; i < c; ++i) vtotal *= q;
  std::set<Fe> out;
  for (size_t vc = 0; vc < vtotal; ++vc)
    for (size_t wc = 0; wc < vtotal; ++wc) {
      linalg::Vec v0(c), w0(c);
      size_t x = vc;
      for (int i = 0; i < c; ++i) { v0[i] = static_cast<Fe>(x % q); x /= q; }
      x = wc;
      for (int i = 0; i < c; ++i) { w0[i] = static_cast<Fe>(x % q); x /= q; }
      for (unsigned t = 0; t < q; ++t)
        for (unsigned u = 0; u < q; ++u) {
          Fe D = S.homology_factor(v0, w0, static_cast<Fe>(t), static_cast<Fe>(u));
          if (D != 0) out.insert(D);
        }
    }
  // closed under conjugation (trivially, the field is commutative)
  for (Fe a : out)
    for (unsigned r = 1; r < q; ++r) {
      Fe rr = static_cast<Fe>(r);
      Fe conj = F.mul(F.inv(rr), F.mul(a, rr));
      if (!out.count(conj)) raise(Errc::Internal, "norm set not closed under conjugation");
    }
  return out;
}

namespace {

std::optional<std::set<int>> hyperplane_inside_fixed(const polar::Residue& R,
                                                     const std::set<int>& fixed) {
  const int np = R.type_size(0);
  if (static_cast<int>(fixed.size()) == np) return fixed; // identity on points: improper
  if (!R.rank_at_least_2()) return fixed;                 // rank-1 residue: vacuous
  if (polar::geometric_hyperplane_check(R, fixed)) return fixed;
  // A reflection may fix one extra point (its centre) besides the hyperplane.
  for (int e : fixed) {
    std::set<int> cand = fixed;
    cand.erase(e);
    if (!cand.empty() && polar::geometric_hyperplane_check(R, cand)) return cand;
  }
  return std::nullopt;
}

} // namespace

std::optional<std::set<int>> find_fixed_hyperplane(const ChamberPerm& cp) {
  const polar::Residue& R = *cp.R;
  std::set<int> fixed;
  const int np = R.type_size(0);
  for (int i = 0; i < np; ++i)
    if (cp.elem[i] == i) fixed.insert(i);
  return hyperplane_inside_fixed(R, fixed);
}

bool sgraph_adjacent(PolarSpace& P, const Subspace& A, const Subspace& B) {
  if (A.k != B.k) raise(Errc::DimensionMismatch, "s-space-graph needs equal dimensions");
  if (A == B) return false;
  const int s = A.k - 1;
  const int n = P.rank();
  if (s == 0) {
    int ai = P.point_index(A), bi = P.point_index(B);
    return P.collinear(ai, bi);
  }
  Subspace m = linalg::meet(A, B);
  if (m.k != s) return false;
  if (s <= n - 2) {
    Subspace j = linalg::join(A, B);
    return j.k == s + 2 && P.form().is_singular(j);
  }
  return true; // maximal case: meeting in a submaximal suffices
}

// ---------------------------------------------------------------------------
// checks

Report check_group(const SpacePtr& P, const Subspace& F, Side side, const GenOptions& opt) {
  Report rep;
  rep.check = "group";
  rep.space = P->form().render();
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();
  GroupResult g = projectivity_group(*P, F, side, opt);
  rep.order_pi = g.order_pi.to_string();
  rep.order_pi_plus = g.order_pi_plus.to_string();
  rep.index12 = static_cast<int64_t>(g.index12);
  rep.catalog = permgrp::catalog_matches(g.order_pi_plus);
  rep.residue = std::string("dim ") + std::to_string(F.k - 1) + (side == Side::Upper ? ":upper" : ":lower");
  int odd = 0, rev = 0;
  for (const auto& cp : g.gens) {
    odd += cp.parity;
    rev += cp.type_reversing ? 1 : 0;
  }
  rep.witness["generators"] = std::to_string(g.gens.size());
  rep.witness["odd_generators"] = std::to_string(odd);
  rep.witness["type_reversing_generators"] = std::to_string(rev);
  rep.witness["nodes"] = std::to_string(g.nodes);
  rep.witness["chords_used"] = std::to_string(g.chords_used) + "/" + std::to_string(g.chords_total);
  rep.witness["parity_collapse"] = g.parity_collapse ? "true" : "false";
  {
    auto cm = permgrp::catalog_matches(g.order_pi);
    std::string s;
    for (const auto& c : cm) s += (s.empty() ? "" : " ") + c;
    rep.witness["catalog_pi"] = s;
  }
  rep.outcome = "pass";
  rep.ms = now_ms() - t0;
  return rep;
}

namespace {

// Sampled or exhaustive stream of triangles (a, b) of nodes opposite the
// root and each other; calls fn until it returns false.
void for_triangles(PolarSpace& P, const OppositionGraph& G, const GenOptions& opt,
                   const std::function<bool(int, int)>& fn) {
  std::vector<int> oppF;
  for (size_t i = 0; i < G.nodes.size(); ++i)
    if (static_cast<int>(i) != G.root &&
        P.is_opposite_with_perp(G.nodes[G.root], G.perps[i]))
      oppF.push_back(static_cast<int>(i));
  if (opt.mode == Mode::Exhaustive) {
    for (int a : oppF)
      for (int b : oppF) {
        if (a == b) continue;
        if (!P.is_opposite_with_perp(G.nodes[a], G.perps[b])) continue;
        if (!fn(a, b)) return;
      }
  } else {
    std::mt19937_64 rng(opt.seed ^ 0x7261696e67756cULL);
    size_t guard = 0;
    while (guard++ < 2000000) {
      int a = oppF[rng() % oppF.size()];
      int b = oppF[rng() % oppF.size()];
      if (a == b) continue;
      if (!P.is_opposite_with_perp(G.nodes[a], G.perps[b])) continue;
      if (!fn(a, b)) return;
    }
  }
}

ChamberPerm triangle_loop(PolarSpace& P, const OppositionGraph& G, Side side, int a, int b) {
  Chain c;
  c.side = side;
  c.hops = {G.nodes[G.root], G.nodes[a], G.nodes[b], G.nodes[G.root]};
  return proj::evaluate_chain(P, c);
}

// Number of maximal singular subspaces through a submaximal one (the dual of
// the line size; the two differ for Hermitian spaces).
int submaximal_degree(PolarSpace& P) {
  const Subspace& W = P.singular_subspaces(P.rank() - 2)[0];
  return P.residue(W, Side::Upper)->type_size(0);
}

// The reduction arguments need thickness at least 4 on the relevant panels:
// line size for non-maximal subspaces, dual thickness for maximal ones.
bool reduction_thickness_ok(PolarSpace& P, int dim_f) {
  if (dim_f == P.rank() - 1) return submaximal_degree(P) >= 4;
  return P.field().q() >= 3;
}

} // namespace

Report check_triangles(const SpacePtr& P, const Subspace& F, Side side, const GenOptions& opt) {
  if (!reduction_thickness_ok(*P, F.k - 1))
    raise(Errc::ConditionNotMet, "triangle reduction needs thickness at least 4 on the panels");
  Report rep;
  rep.check = "triangles";
  rep.space = P->form().render();
  rep.residue = "dim " + std::to_string(F.k - 1);
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();

  GroupResult full = projectivity_group(*P, F, side, opt);
  OppositionGraph G = build_opposition_graph(*P, F);
  LoopGroup g3(full.residue), ge(full.residue);
  std::optional<ChamberPerm> theta0;
  int count = 0, in_batch = 0, degenerate = 0;
  bool done3 = false, donee = false, shorten_ok = true;
  // a triangle whose consecutive perp-intersections coincide shortens to a
  // two-hop loop, which is the identity; verified on the fly
  auto is_degenerate = [&](int a, int b) {
    Subspace pf = linalg::meet(G.perps[G.root], G.perps[a]);
    Subspace pa = linalg::meet(G.perps[a], G.perps[b]);
    if (pf == pa) return true;
    Subspace pb = linalg::meet(G.perps[b], G.perps[G.root]);
    return pa == pb;
  };
  for_triangles(*P, G, opt, [&](int a, int b) {
    ChamberPerm cp = triangle_loop(*P, G, side, a, b);
    if (is_degenerate(a, b)) {
      ++degenerate;
      if (!proj::is_identity(cp)) shorten_ok = false;
    } else if (!theta0) {
      theta0 = cp;
    }
    g3.add(cp);
    if (theta0) ge.add(proj::compose(proj::inverse(*theta0), cp));
    ++count;
    if (opt.mode == Mode::Sampled && ++in_batch == opt.batch) {
      in_batch = 0;
      done3 = g3.note_batch(opt.stability_window) || done3;
      donee = ge.note_batch(opt.stability_window) || donee;
      if (done3 && donee) return false;
    }
    return true;
  });
  GroupResult r3 = g3.result();
  GroupResult re = ge.result();
  bool pass1 = r3.order_pi == full.order_pi;
  bool pass2 = re.order_pi == full.order_pi_plus;
  rep.order_pi = full.order_pi.to_string();
  rep.order_pi_plus = full.order_pi_plus.to_string();
  rep.index12 = static_cast<int64_t>(full.index12);
  rep.witness["triangle_loops"] = std::to_string(count);
  rep.witness["degenerate_loops"] = std::to_string(degenerate);
  rep.witness["order_from_triangles"] = r3.order_pi.to_string();
  rep.witness["order_from_theta0_shifts"] = re.order_pi.to_string();
  rep.outcome = pass1 && pass2 && shorten_ok ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

namespace {

// Up-and-down loop configurations F ~ F3, F2 ~ F4, consecutive hops
// opposite, with the strengthened condition that the joins (non-maximal
// case) or the intersections (maximal case) are opposite. `strict_spans`
// always demands opposite joins, the hypothesis of the two-reflection
// decomposition; without it the join condition is only applied where the
// plane construction behind it has room (rank - s >= 3).
struct UpDownSampler {
  PolarSpace& P;
  const OppositionGraph& G;
  std::vector<int> oppF;
  std::unordered_map<int, std::vector<int>> neighbors; // s-graph adjacency per node
  std::mt19937_64 rng;
  bool strict_spans = false;

  UpDownSampler(PolarSpace& p, const OppositionGraph& g, uint64_t seed)
      : P(p), G(g), rng(seed ^ 0x75616e6464ULL) {
    for (size_t i = 0; i < G.nodes.size(); ++i)
      if (static_cast<int>(i) != G.root &&
          P.is_opposite_with_perp(G.nodes[G.root], G.perps[i]))
        oppF.push_back(static_cast<int>(i));
  }

  const std::vector<int>& neighbors_of(int x) {
    auto it = neighbors.find(x);
    if (it != neighbors.end()) return it->second;
    std::vector<int> out;
    for (size_t j = 0; j < G.nodes.size(); ++j)
      if (static_cast<int>(j) != x && sgraph_adjacent(P, G.nodes[x], G.nodes[j]))
        out.push_back(static_cast<int>(j));
    return neighbors.emplace(x, std::move(out)).first->second;
  }

  // Strengthened loop shape: the intersections (dimension s-1, when s >= 1)
  // must be opposite, and for s <= rank-2 also the joins, provided the
  // ambient leaves room for the plane construction behind that reduction
  // (rank - s >= 3). Without that room the join condition degenerates: in a
  // rank-2 space it only admits trivial loops.
  bool loop_shape_ok(int f, int f2, int f3, int f4) {
    const int s = G.nodes[f].k - 1;
    if (s >= 1) {
      Subspace m13 = linalg::meet(G.nodes[f], G.nodes[f3]);
      Subspace m24 = linalg::meet(G.nodes[f2], G.nodes[f4]);
      if (m13.k != m24.k || m13.k != s) return false;
      if (!P.is_opposite(m13, m24)) return false;
    }
    if (s <= P.rank() - 2 && (strict_spans || P.rank() - s >= 3)) {
      Subspace j13 = linalg::join(G.nodes[f], G.nodes[f3]);
      Subspace j24 = linalg::join(G.nodes[f2], G.nodes[f4]);
      if (j13.k != j24.k) return false;
      return P.is_opposite(j13, j24);
    }
    return true;
  }

  // one random admissible (F2, F3, F4) or nullopt
  std::optional<std::array<int, 3>> sample() {
    for (int tries = 0; tries < 2000; ++tries) {
      int f2 = oppF[rng() % oppF.size()];
      const auto& n1 = neighbors_of(G.root);
      if (n1.empty()) return std::nullopt;
      int f3 = n1[rng() % n1.size()];
      if (!P.is_opposite_with_perp(G.nodes[f3], G.perps[f2])) continue;
      const auto& n2 = neighbors_of(f2);
      if (n2.empty()) continue;
      int f4 = n2[rng() % n2.size()];
      if (!P.is_opposite_with_perp(G.nodes[f4], G.perps[f3])) continue;
      if (!P.is_opposite_with_perp(G.nodes[f4], G.perps[G.root])) continue;
      if (!loop_shape_ok(G.root, f2, f3, f4)) continue;
      return std::array<int, 3>{f2, f3, f4};
    }
    return std::nullopt;
  }
};

} // namespace

Report check_upanddown(const SpacePtr& P, const Subspace& F, Side side, const GenOptions& opt) {
  if (!reduction_thickness_ok(*P, F.k - 1))
    raise(Errc::ConditionNotMet, "up-and-down reduction needs thickness at least 4 on the panels");
  Report rep;
  rep.check = "upanddown";
  rep.space = P->form().render();
  rep.residue = "dim " + std::to_string(F.k - 1);
  rep.seed = opt.seed;
  rep.mode = "sampled"; // configurations are sampled to closure
  int64_t t0 = now_ms();

  GroupResult full = projectivity_group(*P, F, side, opt);
  OppositionGraph G = build_opposition_graph(*P, F);
  UpDownSampler sampler(*P, G, opt.seed);
  LoopGroup g4(full.residue);
  size_t count = 0;
  int in_batch = 0;
  size_t limit = 1000000;
  while (count < limit) {
    auto cfg = sampler.sample();
    if (!cfg) break;
    Chain c;
    c.side = side;
    c.hops = {G.nodes[G.root], G.nodes[(*cfg)[0]], G.nodes[(*cfg)[1]], G.nodes[(*cfg)[2]],
              G.nodes[G.root]};
    g4.add(proj::evaluate_chain(*P, c));
    ++count;
    if (++in_batch == opt.batch) {
      in_batch = 0;
      if (g4.note_batch(opt.stability_window)) break;
    }
  }
  GroupResult r4 = g4.result();
  bool pass = r4.order_pi == full.order_pi_plus;
  rep.order_pi = full.order_pi.to_string();
  rep.order_pi_plus = full.order_pi_plus.to_string();
  rep.index12 = static_cast<int64_t>(full.index12);
  rep.witness["loops"] = std::to_string(count);
  rep.witness["order_from_updown"] = r4.order_pi.to_string();
  rep.outcome = pass ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_gamma(const SpacePtr& P, int s, const GenOptions& opt) {
  Report rep;
  rep.check = "gamma";
  rep.space = P->form().render();
  rep.residue = "s=" + std::to_string(s);
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();

  const int n = P->rank();
  bool hyp = s == 0 || (s <= n - 2 ? P->field().q() >= 3 : submaximal_degree(*P) >= 4);
  const auto& nodes = P->singular_subspaces(s);
  std::vector<Subspace> perps;
  perps.reserve(nodes.size());
  for (const auto& X : nodes) perps.push_back(P->perp(X));

  // neighbor generation inside the opposite-both set
  auto neighbor_candidates = [&](const Subspace& X) {
    std::vector<Subspace> out;
    if (s == 0) {
      int xi = P->point_index(X);
      for (int j = 0; j < P->point_count(); ++j)
        if (j != xi && P->collinear(xi, j)) out.push_back(P->points()[j]);
      return out;
    }
    ResiduePtr low = P->residue(X, Side::Lower);
    std::vector<const Subspace*> hyps;
    for (int id = low->type_offset[low->num_types - 1]; id < low->type_offset[low->num_types];
         ++id)
      hyps.push_back(&low->elems[id]);
    std::unordered_set<std::string> seen;
    if (s <= n - 2) {
      ResiduePtr up = P->residue(X, Side::Upper);
      for (int eid = up->type_offset[0]; eid < up->type_offset[1]; ++eid) {
        const Subspace& pi = up->elems[eid];
        ResiduePtr pilow = P->residue(pi, Side::Lower);
        for (int pid = pilow->type_offset[0]; pid < pilow->type_offset[1]; ++pid) {
          const Subspace& y = pilow->elems[pid];
          if (linalg::contains_subspace(X, y)) continue;
          for (const Subspace* W : hyps) {
            Subspace Y = linalg::join(*W, y);
            if (Y.k != X.k || Y == X) continue;
            if (seen.insert(Y.key()).second) out.push_back(Y);
          }
        }
      }
    } else {
      for (const Subspace* W : hyps) {
        ResiduePtr up = P->residue(*W, Side::Upper);
        for (int eid = up->type_offset[0]; eid < up->type_offset[1]; ++eid) {
          const Subspace& Y = up->elems[eid];
          if (Y == X) continue;
          if (seen.insert(Y.key()).second) out.push_back(Y);
        }
      }
    }
    return out;
  };

  auto connected_for_pair = [&](size_t i1, size_t i2) {
    std::unordered_map<std::string, int> sid;
    std::vector<int> members;
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (j == i1 || j == i2) continue;
      if (!P->is_opposite_with_perp(nodes[j], perps[i1])) continue;
      if (!P->is_opposite_with_perp(nodes[j], perps[i2])) continue;
      sid[nodes[j].key()] = static_cast<int>(members.size());
      members.push_back(static_cast<int>(j));
    }
    if (members.size() <= 1) return true;
    std::vector<char> vis(members.size(), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    size_t seen_cnt = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (const Subspace& Y : neighbor_candidates(nodes[members[cur]])) {
        auto it = sid.find(Y.key());
        if (it == sid.end() || vis[it->second]) continue;
        vis[it->second] = 1;
        ++seen_cnt;
        stack.push_back(it->second);
      }
    }
    return seen_cnt == members.size();
  };

  size_t pairs_checked = 0, pairs_connected = 0;
  if (opt.mode == Mode::Exhaustive) {
    for (size_t i = 0; i < nodes.size(); ++i)
      for (size_t j = i + 1; j < nodes.size(); ++j) {
        ++pairs_checked;
        if (connected_for_pair(i, j)) ++pairs_connected;
      }
  } else {
    std::mt19937_64 rng(opt.seed ^ 0x67616d6d61ULL);
    std::set<std::pair<size_t, size_t>> done;
    size_t guard = 0;
    while (pairs_checked < opt.sample_target && guard++ < 100 * opt.sample_target) {
      size_t i = rng() % nodes.size(), j = rng() % nodes.size();
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (!done.insert({i, j}).second) continue;
      ++pairs_checked;
      if (connected_for_pair(i, j)) ++pairs_connected;
    }
  }
  rep.witness["pairs"] = std::to_string(pairs_checked);
  rep.witness["connected_pairs"] = std::to_string(pairs_connected);
  rep.witness["hypotheses_met"] = hyp ? "true" : "false";
  bool all_conn = pairs_connected == pairs_checked;
  rep.outcome = hyp ? (all_conn ? "pass" : "fail") : "skipped";
  rep.ms = now_ms() - t0;
  return rep;
}

namespace {

struct ReflectionSample {
  int p2;
  std::vector<int> H;
  int k, kp;
};

std::optional<ReflectionSample> sample_reflection_data(PolarSpace& P, int p,
                                                       std::mt19937_64& rng) {
  const auto& pts = P.points();
  const int np = P.point_count();
  for (int tries = 0; tries < 200; ++tries) {
    int p2 = static_cast<int>(rng() % np);
    if (p2 == p || P.collinear(p, p2)) continue;
    std::vector<int> gamma = P.common_perp_points({pts[p], pts[p2]});
    if (gamma.size() < 3) continue;
    // random linear cut: random nonzero vector w, H = {x in gamma : f(x,w)=0}
    const int n = P.dim();
    const unsigned q = P.field().q();
    linalg::Vec w(n, 0);
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      w[i] = static_cast<Fe>(rng() % q);
      nonzero = nonzero || w[i];
    }
    if (!nonzero) continue;
    std::vector<int> H;
    std::vector<int> off;
    for (int x : gamma) {
      if (P.form().eval_bilinear(pts[x].rows, w) == 0)
        H.push_back(x);
      else
        off.push_back(x);
    }
    if (H.empty() || off.size() < 2) continue;
    // pick k and a matching k'
    for (int ktries = 0; ktries < 8; ++ktries) {
      int k = off[rng() % off.size()];
      std::vector<int> matches;
      for (int y : off) {
        if (y == k || P.collinear(k, y)) continue;
        bool same = true;
        for (int h : H)
          if (P.collinear(h, k) != P.collinear(h, y)) { same = false; break; }
        if (same) matches.push_back(y);
      }
      if (!matches.empty()) {
        ReflectionSample s;
        s.p2 = p2;
        s.H = H;
        s.k = k;
        s.kp = matches[rng() % matches.size()];
        return s;
      }
    }
  }
  return std::nullopt;
}

} // namespace

std::vector<int32_t> elem_action_of_chambers(const polar::Residue& R,
                                             const std::vector<int32_t>& chperm) {
  std::vector<int32_t> elem(R.elem_count(), -1);
  for (int ci = 0; ci < R.chamber_count(); ++ci) {
    const auto& src = R.chambers[ci];
    const auto& dst = R.chambers[chperm[ci]];
    for (int t = 0; t < R.num_types; ++t) {
      if (elem[src[t]] == -1)
        elem[src[t]] = dst[t];
      else if (elem[src[t]] != dst[t])
        raise(Errc::Internal, "chamber permutation is not type-preserving");
    }
  }
  return elem;
}

Report check_reflections(const SpacePtr& P, const GenOptions& opt) {
  if (P->rank() < 3) raise(Errc::ConditionNotMet, "reflection analysis needs rank >= 3");
  Report rep;
  rep.check = "reflections";
  rep.space = P->form().render();
  rep.residue = "point:upper";
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();

  const Subspace& p0 = P->points()[0];
  GroupResult full = projectivity_group(*P, p0, Side::Upper, opt);
  OppositionGraph G = build_opposition_graph(*P, p0);

  // (a) every generated length-3 loop pointwise fixes a hyperplane section
  size_t loops_checked = 0, loops_ok = 0;
  {
    size_t budget = opt.mode == Mode::Exhaustive ? SIZE_MAX : 400;
    for_triangles(*P, G, opt, [&](int a, int b) {
      ChamberPerm cp = triangle_loop(*P, G, Side::Upper, a, b);
      ++loops_checked;
      if (find_fixed_hyperplane(cp)) ++loops_ok;
      return loops_checked < budget;
    });
  }
  bool pass_a = loops_checked > 0 && loops_ok == loops_checked;

  // (b) for q >= 3: reflections constructed from hyperplane data generate Pi(p)
  bool run_b = P->field().q() >= 3;
  bool pass_b = true;
  size_t refl_built = 0, refl_failed = 0;
  std::vector<ChamberPerm> reflections;
  if (run_b) {
    int pi0 = P->point_index(p0);
    std::mt19937_64 rng(opt.seed ^ 0x7265666cULL);
    LoopGroup gr(full.residue);
    int in_batch = 0;
    for (size_t it = 0; it < 4000; ++it) {
      auto s = sample_reflection_data(*P, pi0, rng);
      if (!s) break;
      try {
        Chain c = proj::reflection_triangle(*P, pi0, s->p2, s->H, s->k, s->kp);
        ChamberPerm cp = proj::evaluate_chain(*P, c);
        ++refl_built;
        if (!find_fixed_hyperplane(cp)) {
          pass_b = false;
          break;
        }
        // the loop must move line p-k to line p-k'
        ResiduePtr R = full.residue;
        int lk = R->find_elem(linalg::join(p0, P->points()[s->k]));
        int lkp = R->find_elem(linalg::join(p0, P->points()[s->kp]));
        if (lk < 0 || lkp < 0 || cp.elem[lk] != lkp) {
          pass_b = false;
          break;
        }
        gr.add(cp);
        reflections.push_back(std::move(cp));
        if (++in_batch == opt.batch) {
          in_batch = 0;
          if (gr.note_batch(opt.stability_window)) break;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::NoSuchP3) throw;
        ++refl_failed;
      }
    }
    GroupResult rr = gr.result();
    if (refl_built == 0 || rr.order_pi != full.order_pi) pass_b = false;
    rep.witness["order_from_reflections"] = rr.order_pi.to_string();
  }

  // (c) uniqueness of the reflection for sampled (H, k, k') inside Pi(p)
  bool run_c = run_b && full.order_pi.fits_u64() && full.order_pi.as_u64() <= 200000 &&
               !reflections.empty();
  bool pass_c = true;
  if (run_c) {
    int pi0 = P->point_index(p0);
    std::mt19937_64 rng(opt.seed ^ 0x756e69ULL);
    int done = 0;
    for (int attempt = 0; attempt < 20 && done < 3; ++attempt) {
      auto s = sample_reflection_data(*P, pi0, rng);
      if (!s) break;
      ResiduePtr R = full.residue;
      std::vector<int> fixed_lines;
      for (int x : s->H) {
        int le = R->find_elem(linalg::join(p0, P->points()[x]));
        if (le >= 0) fixed_lines.push_back(le);
      }
      int lk = R->find_elem(linalg::join(p0, P->points()[s->k]));
      int lkp = R->find_elem(linalg::join(p0, P->points()[s->kp]));
      if (lk < 0 || lkp < 0) continue;
      uint64_t hits = 0;
      const int N = R->chamber_count();
      full.gstar->for_each_element(
          [&](const permgrp::Perm& g) {
            std::vector<int32_t> ch(N);
            for (int i = 0; i < N; ++i) ch[i] = g[i];
            std::vector<int32_t> elem = elem_action_of_chambers(*R, ch);
            if (elem[lk] != lkp) return;
            for (int le : fixed_lines)
              if (elem[le] != le) return;
            ++hits;
          },
          opt.enumerate_cap);
      if (full.parity_collapse) hits /= 2;
      if (hits != 1) { pass_c = false; }
      ++done;
    }
    rep.witness["uniqueness_samples"] = std::to_string(done);
  }

  rep.order_pi = full.order_pi.to_string();
  rep.order_pi_plus = full.order_pi_plus.to_string();
  rep.index12 = static_cast<int64_t>(full.index12);
  rep.catalog = permgrp::catalog_matches(full.order_pi_plus);
  rep.witness["loops_checked"] = std::to_string(loops_checked);
  rep.witness["loops_fixing_hyperplane"] = std::to_string(loops_ok);
  rep.witness["reflections_built"] = std::to_string(refl_built);
  rep.witness["constructions_obstructed"] = std::to_string(refl_failed);
  rep.witness["generation_checked"] = run_b ? "true" : "false";
  rep.witness["uniqueness_checked"] = run_c ? "true" : "false";
  rep.outcome = (pass_a && pass_b && pass_c) ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_oddeven(const SpacePtr& P, int d, const GenOptions& opt) {
  const forms::FormSpec& S = P->form();
  if (S.kind() != forms::Kind::Quadratic)
    raise(Errc::WrongKind, "parity projection test needs an orthogonal polar space");
  if (S.field()->p() == 2 && S.corank() == 1)
    raise(Errc::WrongKind, "inseparable quadric: the parity projection test needs a separable one");
  if (P->rank() < 3 || d < 1 || d > P->rank() - 2)
    raise(Errc::BadDimension, "need 1 <= d <= rank-2 and rank >= 3");
  Report rep;
  rep.check = "oddeven";
  rep.space = S.render();
  rep.residue = "d=" + std::to_string(d);
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();

  const auto& nodes = P->singular_subspaces(d);
  std::mt19937_64 rng(opt.seed ^ 0x6f6464ULL);
  size_t found = 0, agree = 0;
  size_t guard = 0;
  const bool expect_equal = d % 2 == 1;
  while (found < opt.sample_target && guard++ < 400 * opt.sample_target) {
    const Subspace& U1 = nodes[rng() % nodes.size()];
    const Subspace& U2 = nodes[rng() % nodes.size()];
    if (U1 == U2 || !P->is_opposite(U1, U2)) continue;
    // common neighbor point p, and W_i = <U_i, p>
    std::vector<int> cp = P->common_perp_points({U1, U2});
    if (cp.empty()) continue;
    int p = cp[rng() % cp.size()];
    const Subspace& pp = P->points()[p];
    if (linalg::contains(U1, pp.rows) || linalg::contains(U2, pp.rows)) continue;
    Subspace W1 = linalg::join(U1, pp);
    Subspace W2 = linalg::join(U2, pp);
    if (W1.k != d + 2 || W2.k != d + 2) continue;
    if (!S.is_singular(W1) || !S.is_singular(W2)) continue;
    if (linalg::meet(W1, W2).k != 1) continue;
    // U3 of dimension d meeting <U1,U2> in a (d-1)-space, opposite U1 and U2
    const Subspace& U3 = nodes[rng() % nodes.size()];
    if (U3 == U1 || U3 == U2) continue;
    if (!P->is_opposite(U3, U1) || !P->is_opposite(U3, U2)) continue;
    Subspace span12 = linalg::join(U1, U2);
    if (linalg::meet(U3, span12).k != d) continue;
    // p must not be collinear with all of U3
    Subspace perp_p = P->perp(pp);
    if (linalg::contains_subspace(perp_p, U3)) continue;
    ++found;
    Subspace img = P->project_upper(U2, U3, W2);
    img = P->project_upper(U3, U1, img);
    bool equal = img == W1;
    if (equal == expect_equal) ++agree;
  }
  if (found == 0) raise(Errc::NoConfigurationFound, "no admissible configuration sampled");
  rep.witness["configurations"] = std::to_string(found);
  rep.witness["agreeing"] = std::to_string(agree);
  rep.witness["expected"] = expect_equal ? "image equals W1" : "image differs from W1";
  rep.outcome = agree == found ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_normset(const SpacePtr& P, const GenOptions& opt) {
  const forms::FormSpec& S = P->form();
  Report rep;
  rep.check = "normset";
  rep.space = S.render();
  rep.residue = "max:lower";
  rep.seed = opt.seed;
  rep.mode = "exhaustive";
  int64_t t0 = now_ms();

  std::set<Fe> ns = norm_set(S);
  const gf::Field& F = P->field();
  const unsigned q = F.q();
  const int c = S.corank();
  size_t vtotal = 1;
  for (int i = 0; i < c; ++i) vtotal *= q;

  std::set<Fe> factors;
  size_t loops = 0, mismatches = 0;
  for (size_t vc = 0; vc < vtotal; ++vc)
    for (size_t wc = 0; wc < vtotal; ++wc)
      for (unsigned t = 0; t < q; ++t)
        for (unsigned u = 0; u < q; ++u) {
          linalg::Vec v0(c), w0(c);
          size_t x = vc;
          for (int i = 0; i < c; ++i) { v0[i] = static_cast<Fe>(x % q); x /= q; }
          x = wc;
          for (int i = 0; i < c; ++i) { w0[i] = static_cast<Fe>(x % q); x /= q; }
          Fe D = S.homology_factor(v0, w0, static_cast<Fe>(t), static_cast<Fe>(u));
          if (D == 0) continue;
          Chain chain = proj::homology_quadruple(*P, v0, w0, static_cast<Fe>(t),
                                                 static_cast<Fe>(u));
          ChamberPerm cp = proj::evaluate_chain(*P, chain);
          Fe got = proj::extract_homology_factor(cp);
          ++loops;
          if (got != D) ++mismatches;
          factors.insert(got);
        }

  std::string ns_str, fact_str;
  for (Fe a : ns) ns_str += (ns_str.empty() ? "" : ",") + std::to_string(int(a));
  for (Fe a : factors) fact_str += (fact_str.empty() ? "" : ",") + std::to_string(int(a));
  rep.witness["norm_set"] = ns_str;
  rep.witness["factors"] = fact_str;
  rep.witness["loops"] = std::to_string(loops);
  rep.witness["formula_mismatches"] = std::to_string(mismatches);

  bool pass = mismatches == 0 && factors == ns && loops > 0;
  rep.outcome = pass ? "pass" : "fail";
  // Known tension: Hermitian corank 0 over GF(4) has norm set {1}, so the
  // standard loops are all trivial, while the identified special group of a
  // maximal subspace is nontrivial. Reported, not resolved.
  if (pass && S.kind() == forms::Kind::Hermitian && c == 0 && ns == std::set<Fe>{1}) {
    rep.outcome = "discrepancy";
    rep.witness["note"] =
        "norm set is {1} (factor-1 homologies are trivial) while the subfield-determinant "
        "prediction for the special group of a maximal subspace is nontrivial";
  }
  rep.ms = now_ms() - t0;
  return rep;
}

std::pair<std::vector<int32_t>, bool> lower_elem_action(const polar::Residue& R,
                                                        const std::vector<int32_t>& chperm) {
  for (bool reversing : {false, true}) {
    std::vector<int32_t> elem(R.elem_count(), -1);
    bool ok = true;
    for (int ci = 0; ci < R.chamber_count() && ok; ++ci) {
      const auto& src = R.chambers[ci];
      const auto& dst = R.chambers[chperm[ci]];
      for (int t = 0; t < R.num_types; ++t) {
        int32_t img = dst[reversing ? R.num_types - 1 - t : t];
        if (elem[src[t]] == -1)
          elem[src[t]] = img;
        else if (elem[src[t]] != img) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return {elem, reversing};
  }
  raise(Errc::Internal, "chamber permutation is neither collineation nor correlation");
}

Report check_maxsubspace(const SpacePtr& P, const GenOptions& opt) {
  const forms::FormSpec& S = P->form();
  Report rep;
  rep.check = "maxsubspace";
  rep.space = S.render();
  rep.residue = "max:lower";
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();

  const auto& maxes = P->singular_subspaces(P->rank() - 1);
  const Subspace& M = maxes[0];
  GroupResult full = projectivity_group(*P, M, Side::Lower, opt);

  // catalog prediction for the special group
  const unsigned q = P->field().q();
  const int r = P->rank();
  BigUint predicted;
  std::string predicted_name;
  switch (S.kind()) {
    case forms::Kind::Symplectic:
      predicted = permgrp::catalog_order("PGL", {r, static_cast<long>(q)});
      predicted_name = "PGL(" + std::to_string(r) + "," + std::to_string(q) + ")";
      break;
    case forms::Kind::Hermitian:
      if (S.corank() == 0) {
        long q0 = 1;
        for (unsigned i = 0; i < P->field().k() / 2; ++i) q0 *= P->field().p();
        predicted = permgrp::catalog_order("PSLsub", {r, static_cast<long>(q), q0});
        predicted_name = "PSL(" + std::to_string(r) + "," + std::to_string(q) + ";" +
                         std::to_string(q0) + ")";
      } else {
        predicted = permgrp::catalog_order("PGL", {r, static_cast<long>(q)});
        predicted_name = "PGL(" + std::to_string(r) + "," + std::to_string(q) + ")";
      }
      break;
    case forms::Kind::Quadratic:
      // corank 2: every field element is a norm; corank 1: the factors are
      // the squares, which is everything when q is even and index 2 otherwise.
      if (S.corank() == 2 || r % 2 == 1 || q % 2 == 0) {
        predicted = permgrp::catalog_order("PGL", {r, static_cast<long>(q)});
        predicted_name = "PGL(" + std::to_string(r) + "," + std::to_string(q) + ")";
      } else {
        predicted = permgrp::catalog_order("PGL", {r, static_cast<long>(q)});
        predicted.div_u32(2);
        predicted_name = "square-determinant subgroup of PGL(" + std::to_string(r) + "," +
                         std::to_string(q) + ")";
      }
      break;
  }

  bool order_match = full.order_pi_plus == predicted;
  uint64_t expect_index = r >= 3 ? 2 : (S.kind() == forms::Kind::Hermitian ? 2 : 1);
  bool index_match = full.index12 == expect_index;

  // odd elements must act as correlations
  bool odd_all_reversing = true;
  for (const auto& gcp : full.gens)
    if (gcp.parity == 1) {
      auto [elem, reversing] = lower_elem_action(*full.residue, gcp.chamber);
      (void)elem;
      if (!reversing && full.residue->num_types >= 2) odd_all_reversing = false;
    }

  // sampled standard loops: factor matches formula and lies in the norm set
  size_t factor_samples = 0, factor_bad = 0;
  if (S.kind() != forms::Kind::Symplectic && r >= 2) {
    std::set<Fe> ns = norm_set(S);
    std::mt19937_64 rng(opt.seed ^ 0x6d617873ULL);
    const int c = S.corank();
    for (int it = 0; it < 60; ++it) {
      linalg::Vec v0(c), w0(c);
      for (int i = 0; i < c; ++i) v0[i] = static_cast<Fe>(rng() % q);
      for (int i = 0; i < c; ++i) w0[i] = static_cast<Fe>(rng() % q);
      Fe t = static_cast<Fe>(rng() % q), u = static_cast<Fe>(rng() % q);
      Fe D = S.homology_factor(v0, w0, t, u);
      if (D == 0) continue;
      Chain chain = proj::homology_quadruple(*P, v0, w0, t, u);
      Fe got = proj::extract_homology_factor(proj::evaluate_chain(*P, chain));
      ++factor_samples;
      if (got != D || !ns.count(got)) ++factor_bad;
    }
  }

  rep.order_pi = full.order_pi.to_string();
  rep.order_pi_plus = full.order_pi_plus.to_string();
  rep.index12 = static_cast<int64_t>(full.index12);
  rep.catalog = permgrp::catalog_matches(full.order_pi_plus);
  rep.witness["predicted"] = predicted_name + " = " + predicted.to_string();
  rep.witness["odd_all_type_reversing"] = odd_all_reversing ? "true" : "false";
  rep.witness["factor_samples"] = std::to_string(factor_samples);
  rep.witness["factor_mismatches"] = std::to_string(factor_bad);

  bool pass = order_match && index_match && odd_all_reversing && factor_bad == 0;
  if (S.kind() == forms::Kind::Hermitian && S.corank() == 0 && !order_match) {
    rep.outcome = "discrepancy";
    rep.witness["note"] = "computed special group disagrees with the subfield-determinant "
                          "prediction; see the norm-set question";
  } else {
    rep.outcome = pass ? "pass" : "fail";
  }
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_nonmaxlower(const SpacePtr& P, int d, const GenOptions& opt) {
  Report rep;
  rep.check = "nonmaxlower";
  rep.space = P->form().render();
  rep.residue = "subspace(d=" + std::to_string(d) + "):lower";
  rep.seed = opt.seed;
  rep.mode = mode_name(opt.mode);
  int64_t t0 = now_ms();
  if (d == 0) {
    rep.outcome = "skipped";
    rep.witness["note"] = "lower residue of a point is trivial";
    rep.ms = now_ms() - t0;
    return rep;
  }
  if (d > P->rank() - 2) raise(Errc::BadDimension, "need d <= rank-2");

  const Subspace& U = P->singular_subspaces(d)[0];
  GroupResult full = projectivity_group(*P, U, Side::Lower, opt);

  const unsigned q = P->field().q();
  BigUint predicted = permgrp::catalog_order("PGL", {d + 1, static_cast<long>(q)});
  uint64_t expect_index;
  if (d >= 2)
    expect_index = 2;
  else
    expect_index = P->form().kind() == forms::Kind::Hermitian ? 2 : 1;

  bool odd_ok = true;
  for (const auto& gcp : full.gens)
    if (gcp.parity == 1 && full.residue->num_types >= 2) {
      auto [elem, reversing] = lower_elem_action(*full.residue, gcp.chamber);
      (void)elem;
      if (!reversing) odd_ok = false;
    }
  bool has_odd = false;
  for (const auto& gcp : full.gens) has_odd = has_odd || gcp.parity == 1;

  rep.order_pi = full.order_pi.to_string();
  rep.order_pi_plus = full.order_pi_plus.to_string();
  rep.index12 = static_cast<int64_t>(full.index12);
  rep.catalog = permgrp::catalog_matches(full.order_pi_plus);
  rep.witness["predicted"] = "PGL(" + std::to_string(d + 1) + "," + std::to_string(q) +
                             ") = " + predicted.to_string();
  rep.witness["odd_elements_exist"] = has_odd ? "true" : "false";
  rep.witness["odd_all_type_reversing"] = odd_ok ? "true" : "false";
  bool pass = full.order_pi_plus == predicted && full.index12 == expect_index && odd_ok &&
              has_odd;
  rep.outcome = pass ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_conic_elation(const gf::FieldPtr& F, const GenOptions& opt) {
  if (F->p() != 2) raise(Errc::WrongKind, "conic elation check needs characteristic 2");
  Report rep;
  rep.check = "conic-elation";
  rep.space = "PG(2," + std::to_string(F->q()) + ")";
  rep.residue = "conic Y^2=XZ";
  rep.seed = opt.seed;
  rep.mode = "exhaustive";
  int64_t t0 = now_ms();

  auto conic = proj::conic_points(*F);
  std::set<std::string> conic_keys;
  for (const auto& v : conic) {
    auto r = linalg::projective_rep(*F, v);
    conic_keys.insert(std::string(r.begin(), r.end()));
  }
  size_t tested = 0, good = 0, singular = 0;
  for (unsigned a = 0; a < F->q(); ++a)
    for (unsigned b = 0; b < F->q(); ++b) {
      Fe aa = static_cast<Fe>(a), bb = static_cast<Fe>(b);
      if (bb != 0 && aa == 0) continue; // axis not of the X=kZ family
      Fe k = aa == 0 ? static_cast<Fe>(0) : F->inv(aa);
      if (bb != 0 && F->add(1, F->mul(aa, F->mul(bb, bb))) == 0) {
        bool threw = false;
        try {
          proj::char2_conic_elation(*F, k, aa, bb);
        } catch (const Error& e) {
          threw = e.code() == Errc::Singular;
        }
        if (threw) ++singular;
        continue;
      }
      proj::Mat3 M = proj::char2_conic_elation(*F, k, aa, bb);
      ++tested;
      bool ok = true;
      for (const auto& v : conic) {
        auto img = linalg::projective_rep(*F, proj::apply_mat3(*F, M, v));
        if (!conic_keys.count(std::string(img.begin(), img.end()))) { ok = false; break; }
      }
      if (ok && bb != 0) {
        // the pointwise-fixed set is exactly the prescribed line
        std::set<std::string> line_keys;
        for (const auto& v : proj::line_xkz_points(*F, k)) {
          auto rep = linalg::projective_rep(*F, v);
          line_keys.insert(std::string(rep.begin(), rep.end()));
        }
        for (unsigned x = 0; x < F->q() && ok; ++x)
          for (unsigned y = 0; y < F->q() && ok; ++y)
            for (unsigned z = 0; z < F->q() && ok; ++z) {
              linalg::Vec v = {static_cast<Fe>(x), static_cast<Fe>(y), static_cast<Fe>(z)};
              if (x == 0 && y == 0 && z == 0) continue;
              auto rep = linalg::projective_rep(*F, v);
              if (rep != v) continue;
              auto img = linalg::projective_rep(*F, proj::apply_mat3(*F, M, v));
              bool on_line = line_keys.count(std::string(rep.begin(), rep.end())) > 0;
              if ((img == rep) != on_line) ok = false;
            }
      }
      if (ok) ++good;
    }
  rep.witness["matrices_tested"] = std::to_string(tested);
  rep.witness["singular_rejected"] = std::to_string(singular);
  rep.outcome = tested > 0 && good == tested ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_engine_oracle(const SpacePtr& P, const Subspace& F, Side side, int max_len,
                           const GenOptions& opt) {
  Report rep;
  rep.check = "engine-oracle";
  rep.space = P->form().render();
  rep.residue = "dim " + std::to_string(F.k - 1) + (side == Side::Upper ? ":upper" : ":lower");
  rep.seed = opt.seed;
  rep.mode = "exhaustive";
  int64_t t0 = now_ms();

  GenOptions ex = opt;
  ex.mode = Mode::Exhaustive;
  GroupResult full = projectivity_group(*P, F, side, ex);

  OppositionGraph G = build_opposition_graph(*P, F);
  ResiduePtr RF = full.residue;
  const size_t nn = G.nodes.size();
  // adjacency lists + cross maps per edge (computed on demand, cached)
  std::vector<std::vector<int>> adj(nn);
  for (size_t i = 0; i < nn; ++i)
    for (size_t j = 0; j < nn; ++j)
      if (i != j && P->is_opposite_with_perp(G.nodes[i], G.perps[j]))
        adj[i].push_back(static_cast<int>(j));
  std::map<std::pair<int, int>, std::vector<int32_t>> edge_maps;
  auto edge_map = [&](int a, int b) -> const std::vector<int32_t>& {
    auto key = std::make_pair(a, b);
    auto it = edge_maps.find(key);
    if (it != edge_maps.end()) return it->second;
    proj::CrossMap cm = proj::perspectivity(*P, G.nodes[a], G.nodes[b], side);
    return edge_maps.emplace(key, std::move(cm.elem)).first->second;
  };

  // walk DP: states (node, element-map from Res(F), parity)
  struct State {
    std::vector<int32_t> map;
    int parity;
  };
  auto state_key = [](const State& s) {
    std::string k(reinterpret_cast<const char*>(s.map.data()), s.map.size() * 4);
    k.push_back(static_cast<char>(s.parity));
    return k;
  };
  std::vector<std::unordered_map<std::string, State>> cur(nn), nxt(nn);
  {
    State id;
    id.map.resize(RF->elem_count());
    for (int i = 0; i < RF->elem_count(); ++i) id.map[i] = i;
    id.parity = 0;
    cur[G.root].emplace(state_key(id), id);
  }
  LoopGroup closure(RF);
  for (int step = 1; step <= max_len; ++step) {
    for (auto& m : nxt) m.clear();
    for (size_t x = 0; x < nn; ++x) {
      for (const auto& [k, st] : cur[x]) {
        for (int y : adj[x]) {
          State t;
          t.map = compose_maps(st.map, edge_map(static_cast<int>(x), y));
          t.parity = (st.parity + 1) % 2;
          nxt[y].emplace(state_key(t), std::move(t));
        }
      }
    }
    std::swap(cur, nxt);
    for (const auto& [k, st] : cur[G.root]) {
      ChamberPerm cp;
      cp.R = RF;
      cp.elem = st.map;
      cp.parity = st.parity;
      cp.type_reversing = side == Side::Lower && st.parity == 1;
      cp.chamber = proj::chamber_action(*RF, cp.elem, cp.type_reversing);
      closure.add(cp);
    }
  }
  GroupResult cl = closure.result();
  bool pass = cl.order_pi == full.order_pi && cl.order_pi_plus == full.order_pi_plus;
  rep.order_pi = full.order_pi.to_string();
  rep.order_pi_plus = full.order_pi_plus.to_string();
  rep.witness["closure_order_pi"] = cl.order_pi.to_string();
  rep.witness["closure_order_pi_plus"] = cl.order_pi_plus.to_string();
  rep.witness["max_walk_length"] = std::to_string(max_len);
  rep.outcome = pass ? "pass" : "fail";
  rep.ms = now_ms() - t0;
  return rep;
}

Report check_two_reflections(const SpacePtr& P, int m, const GenOptions& opt) {
  const forms::FormSpec& S = P->form();
  if (S.kind() != forms::Kind::Quadratic)
    raise(Errc::WrongKind, "two-reflection decomposition targets separable quadrics");
  if (m > P->rank() - 2) raise(Errc::BadDimension, "need m <= rank-2");
  Report rep;
  rep.check = "two-reflections";
  rep.space = S.render();
  rep.residue = "dim " + std::to_string(m) + ":upper";
  rep.seed = opt.seed;
  rep.mode = "sampled";
  int64_t t0 = now_ms();

  const auto& nodes = P->singular_subspaces(m);
  const Subspace& F = nodes[0];
  OppositionGraph G = build_opposition_graph(*P, F);
  ResiduePtr RF = P->residue(F, Side::Upper);

  // Reflection candidates, as bare point-action permutations: elements of the
  // generated group pointwise fixing a hyperplane (rank >= 2 residues, found
  // by full enumeration), or single triangle loops as realizing chains.
  auto points_key = [&](const std::vector<int32_t>& elem) {
    return std::string(reinterpret_cast<const char*>(elem.data()),
                       static_cast<size_t>(RF->type_size(0)) * 4);
  };
  std::unordered_map<std::string, std::vector<int32_t>> cands;
  {
    ChamberPerm id = proj::identity_perm(RF);
    cands.emplace(points_key(id.elem), id.elem);
    GenOptions o2 = opt;
    o2.mode = Mode::Sampled;
    size_t budget = 1500;
    size_t got = 0;
    for_triangles(*P, G, o2, [&](int a, int b) {
      ChamberPerm cp = triangle_loop(*P, G, Side::Upper, a, b);
      if (find_fixed_hyperplane(cp)) cands.emplace(points_key(cp.elem), cp.elem);
      return ++got < budget;
    });
  }
  if (RF->rank_at_least_2()) {
    GroupResult full = projectivity_group(*P, F, Side::Upper, opt);
    if (full.order_pi.fits_u64() && full.order_pi.as_u64() <= 300000) {
      const int N = RF->chamber_count();
      full.gstar->for_each_element(
          [&](const permgrp::Perm& g) {
            std::vector<int32_t> ch(N);
            for (int i = 0; i < N; ++i) ch[i] = g[i];
            std::vector<int32_t> elem = elem_action_of_chambers(*RF, ch);
            std::set<int> fixed;
            for (int i = 0; i < RF->type_size(0); ++i)
              if (elem[i] == i) fixed.insert(i);
            if (hyperplane_inside_fixed(*RF, fixed)) cands.emplace(points_key(elem), elem);
          },
          opt.enumerate_cap);
    }
  }

  UpDownSampler sampler(*P, G, opt.seed ^ 0x74776fULL);
  sampler.strict_spans = true;
  size_t loops = 0, decomposed = 0;
  while (loops < 40) {
    auto cfg = sampler.sample();
    if (!cfg) break;
    Chain c;
    c.side = Side::Upper;
    c.hops = {G.nodes[G.root], G.nodes[(*cfg)[0]], G.nodes[(*cfg)[1]], G.nodes[(*cfg)[2]],
              G.nodes[G.root]};
    ChamberPerm theta = proj::evaluate_chain(*P, c);
    ++loops;
    bool found = false;
    const int np = RF->type_size(0);
    for (const auto& [k1, r1] : cands) {
      // rest = r1^{-1} theta on residue points
      std::vector<int32_t> inv(np);
      for (int i = 0; i < np; ++i) inv[r1[i]] = i;
      std::vector<int32_t> rest(np);
      for (int i = 0; i < np; ++i) rest[i] = theta.elem[inv[i]];
      bool sane = true;
      for (int i = 0; i < np && sane; ++i) sane = rest[i] < np;
      if (sane && cands.count(points_key(rest))) { found = true; break; }
    }
    if (found) ++decomposed;
  }
  rep.witness["loops"] = std::to_string(loops);
  rep.witness["decomposed"] = std::to_string(decomposed);
  rep.witness["candidates"] = std::to_string(cands.size());
  if (loops == 0) {
    // Over GF(2) a 3-point line cannot carry two points off both perp
    // projections, so the opposite-span hypothesis has no instances.
    rep.outcome = "skipped";
    rep.witness["note"] = "no configuration satisfies the opposite-span hypothesis here";
  } else {
    rep.outcome = decomposed == loops ? "pass" : "fail";
  }
  rep.ms = now_ms() - t0;
  return rep;
}

} // namespace polproj::verify
