#include "fpsets/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "fpsets/errors.hpp"

namespace fpsets {

struct ModuleRep::Impl {
  int p = 2;
  GroupHandle group;
  std::optional<GroupHandle> sylow_hint;
  virtual ~Impl() = default;
  virtual int dim() const = 0;
  virtual std::vector<int> image(const Permutation& g) const = 0;
  virtual std::string label(int i) const = 0;
};

namespace {

struct PointImpl : ModuleRep::Impl {
  std::vector<int> points;  // sorted
  std::unordered_map<int, int> index;

  int dim() const override { return static_cast<int>(points.size()); }
  std::vector<int> image(const Permutation& g) const override {
    std::vector<int> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto it = index.find(g(points[i]));
      if (it == index.end()) throw ActionNotClosed("group element moves the point basis");
      img[i] = it->second;
    }
    return img;
  }
  std::string label(int i) const override { return std::to_string(points[i]); }
};

struct ConjImpl : ModuleRep::Impl {
  std::vector<Permutation> basis;  // sorted
  std::unordered_map<Permutation, int, PermutationHash> index;

  int dim() const override { return static_cast<int>(basis.size()); }
  std::vector<int> image(const Permutation& g) const override {
    std::vector<int> img(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto it = index.find(basis[i].conjugated_by(g));
      if (it == index.end()) throw ActionNotClosed("conjugation leaves the basis set");
      img[i] = it->second;
    }
    return img;
  }
  std::string label(int i) const override { return basis[i].str(); }
};

Permutation restrict_to(const Permutation& g, const std::vector<int>& pts) {
  std::vector<std::pair<int, int>> moved;
  for (const auto& [k, v] : g.moved())
    if (std::binary_search(pts.begin(), pts.end(), k)) moved.emplace_back(k, v);
  return Permutation::from_moved(std::move(moved));
}

struct TensorImpl : ModuleRep::Impl {
  std::shared_ptr<const ModuleRep::Impl> a, b;
  std::vector<int> dom_a, dom_b;  // sorted, disjoint; dom_b holds shifted points
  int shift = 0;                  // added to b's original points

  int dim() const override { return a->dim() * b->dim(); }
  std::vector<int> image(const Permutation& g) const override {
    for (const auto& [k, v] : g.moved()) {
      bool ka = std::binary_search(dom_a.begin(), dom_a.end(), k);
      bool va = std::binary_search(dom_a.begin(), dom_a.end(), v);
      if (ka != va) throw ActionNotClosed("element mixes tensor factors");
    }
    Permutation ga = restrict_to(g, dom_a);
    Permutation gb_shifted = restrict_to(g, dom_b);
    std::vector<std::pair<int, int>> unshifted;
    for (const auto& [k, v] : gb_shifted.moved()) unshifted.emplace_back(k - shift, v - shift);
    Permutation gb = Permutation::from_moved(std::move(unshifted));
    auto ia = a->image(ga);
    auto ib = b->image(gb);
    int db = b->dim();
    std::vector<int> img(static_cast<std::size_t>(dim()));
    for (int i = 0; i < a->dim(); ++i)
      for (int j = 0; j < db; ++j) img[i * db + j] = ia[i] * db + ib[j];
    return img;
  }
  std::string label(int i) const override {
    return a->label(i / b->dim()) + "|" + b->label(i % b->dim());
  }
};

struct WreathImpl : ModuleRep::Impl {
  std::shared_ptr<const ModuleRep::Impl> base;
  std::vector<int> base_domain;  // sorted original domain of the base group
  int u = 1;
  int m = 0;  // |base_domain|

  // wreath domain point for (block, rank) with rank in [0, m)
  int wpoint(int block, int rank) const { return block * m + rank + 1; }

  int dim() const override {
    int d = 1;
    for (int i = 0; i < u; ++i) d *= base->dim();
    return d;
  }

  std::vector<int> image(const Permutation& g) const override {
    // block map
    std::vector<int> sigma(u, -1);
    for (int b = 0; b < u; ++b) {
      int img = g(wpoint(b, 0));
      int tb = (img - 1) / m;
      sigma[b] = tb;
    }
    std::vector<Permutation> comp(u);
    for (int b = 0; b < u; ++b) {
      std::vector<std::pair<int, int>> moved;
      for (int r = 0; r < m; ++r) {
        int img = g(wpoint(b, r));
        if ((img - 1) / m != sigma[b]) throw ActionNotClosed("element splits a wreath block");
        int r2 = (img - 1) % m;
        if (r2 != r) moved.emplace_back(base_domain[r], base_domain[r2]);
      }
      comp[b] = Permutation::from_moved(std::move(moved));
    }
    std::vector<std::vector<int>> base_imgs(u);
    for (int b = 0; b < u; ++b) base_imgs[b] = base->image(comp[b]);

    int db = base->dim();
    int d = dim();
    std::vector<int> img(static_cast<std::size_t>(d));
    std::vector<int> digits(u);
    for (int idx = 0; idx < d; ++idx) {
      int t = idx;
      for (int b = u - 1; b >= 0; --b) {
        digits[b] = t % db;
        t /= db;
      }
      // new tuple at place sigma[b] comes from place b acted on by comp[b]
      std::vector<int> out(u);
      for (int b = 0; b < u; ++b) out[sigma[b]] = base_imgs[b][digits[b]];
      int code = 0;
      for (int b = 0; b < u; ++b) code = code * db + out[b];
      img[idx] = code;
    }
    return img;
  }

  std::string label(int i) const override {
    int db = base->dim();
    std::vector<int> digits(u);
    int t = i;
    for (int b = u - 1; b >= 0; --b) {
      digits[b] = t % db;
      t /= db;
    }
    std::ostringstream os;
    os << '(';
    for (int b = 0; b < u; ++b) {
      if (b) os << ',';
      os << base->label(digits[b]);
    }
    os << ')';
    return os.str();
  }
};

}  // namespace

int ModuleRep::p() const { return impl_->p; }
int ModuleRep::dim() const { return impl_->dim(); }
const GroupHandle& ModuleRep::group() const { return impl_->group; }
std::vector<int> ModuleRep::basis_image(const Permutation& g) const { return impl_->image(g); }
std::string ModuleRep::basis_label(int i) const { return impl_->label(i); }

MatGFp ModuleRep::matrix_of(const Permutation& g) const {
  return MatGFp::from_basis_images(basis_image(g), p());
}

GroupHandle ModuleRep::sylow(std::uint64_t cap) const {
  if (impl_->sylow_hint) return *impl_->sylow_hint;
  return sylow_p(impl_->group, impl_->p, cap);
}

ModuleRep ModuleRep::point_module(GroupHandle G, std::vector<int> points, int p) {
  auto impl = std::make_shared<PointImpl>();
  impl->p = p;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  impl->points = std::move(points);
  for (std::size_t i = 0; i < impl->points.size(); ++i) impl->index[impl->points[i]] = static_cast<int>(i);
  impl->group = std::move(G);
  ModuleRep M{impl};
  for (const auto& g : M.group().generators()) M.basis_image(g);  // validates closure
  return M;
}

ModuleRep ModuleRep::conjugation_module(GroupHandle G, std::vector<Permutation> basis, int p) {
  auto impl = std::make_shared<ConjImpl>();
  impl->p = p;
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  impl->basis = std::move(basis);
  for (std::size_t i = 0; i < impl->basis.size(); ++i) impl->index[impl->basis[i]] = static_cast<int>(i);
  impl->group = std::move(G);
  ModuleRep M{impl};
  for (const auto& g : M.group().generators()) M.basis_image(g);
  return M;
}

ModuleRep ModuleRep::tensor(const ModuleRep& A, const ModuleRep& B) {
  if (A.p() != B.p()) throw InvalidInput("tensor factors over different fields");
  auto impl = std::make_shared<TensorImpl>();
  impl->p = A.p();
  impl->a = A.impl_;
  impl->b = B.impl_;
  impl->dom_a = A.group().domain();
  int maxa = 0;
  for (int pt : impl->dom_a) maxa = std::max(maxa, pt);
  impl->shift = maxa;
  for (int pt : B.group().domain()) impl->dom_b.push_back(pt + impl->shift);

  std::vector<Permutation> gens = A.group().generators();
  for (const auto& g : B.group().generators()) {
    std::vector<std::pair<int, int>> moved;
    for (const auto& [k, v] : g.moved()) moved.emplace_back(k + impl->shift, v + impl->shift);
    gens.push_back(Permutation::from_moved(std::move(moved)));
  }
  std::vector<int> domain = impl->dom_a;
  domain.insert(domain.end(), impl->dom_b.begin(), impl->dom_b.end());
  std::sort(domain.begin(), domain.end());
  impl->group = GroupHandle::from_generators(std::move(gens), domain);
  return ModuleRep{impl};
}

ModuleRep ModuleRep::wreath_power(const ModuleRep& M, int u, std::uint64_t group_cap) {
  if (u < 1) throw InvalidInput("wreath power needs u >= 1");
  auto impl = std::make_shared<WreathImpl>();
  impl->p = M.p();
  impl->base = M.impl_;
  impl->base_domain = M.group().domain();
  impl->u = u;
  impl->m = static_cast<int>(impl->base_domain.size());
  if (impl->m == 0) {
    // base group on an empty domain: give each copy one inert point
    impl->base_domain = {};
    impl->m = 1;
  }
  const int m = impl->m;
  auto rank_of = [&](int pt) {
    auto it = std::lower_bound(impl->base_domain.begin(), impl->base_domain.end(), pt);
    return static_cast<int>(it - impl->base_domain.begin());
  };

  std::vector<Permutation> gens;
  for (int b = 0; b < u; ++b)
    for (const auto& g : M.group().generators()) {
      std::vector<std::pair<int, int>> moved;
      for (const auto& [k, v] : g.moved())
        moved.emplace_back(b * m + rank_of(k) + 1, b * m + rank_of(v) + 1);
      gens.push_back(Permutation::from_moved(std::move(moved)));
    }
  auto block_perm = [&](const std::vector<int>& sigma) {
    std::vector<std::pair<int, int>> moved;
    for (int b = 0; b < u; ++b)
      if (sigma[b] != b)
        for (int r = 0; r < m; ++r) moved.emplace_back(b * m + r + 1, sigma[b] * m + r + 1);
    return Permutation::from_moved(std::move(moved));
  };
  std::vector<Permutation> top_gens;
  if (u >= 2) {
    std::vector<int> swap01(u);
    for (int i = 0; i < u; ++i) swap01[i] = i;
    std::swap(swap01[0], swap01[1]);
    top_gens.push_back(block_perm(swap01));
    if (u > 2) {
      std::vector<int> cyc(u);
      for (int i = 0; i < u; ++i) cyc[i] = (i + 1) % u;
      top_gens.push_back(block_perm(cyc));
    }
  }
  gens.insert(gens.end(), top_gens.begin(), top_gens.end());

  std::vector<int> domain(u * m);
  for (int i = 0; i < u * m; ++i) domain[i] = i + 1;
  impl->group = GroupHandle::from_generators(gens, domain);

  // Sylow subgroup assembled directly: base Sylow in every block plus the
  // lifted Sylow of the top symmetric group.
  GroupHandle base_sylow = M.sylow(group_cap);
  std::vector<Permutation> sgens;
  for (int b = 0; b < u; ++b)
    for (const auto& g : base_sylow.generators()) {
      std::vector<std::pair<int, int>> moved;
      for (const auto& [k, v] : g.moved())
        moved.emplace_back(b * m + rank_of(k) + 1, b * m + rank_of(v) + 1);
      sgens.push_back(Permutation::from_moved(std::move(moved)));
    }
  if (u >= 2) {
    GroupHandle top_sylow = sylow_sym(u, M.p());
    for (const auto& s : top_sylow.generators()) {
      std::vector<int> sigma(u);
      for (int i = 0; i < u; ++i) sigma[i] = s(i + 1) - 1;
      sgens.push_back(block_perm(sigma));
    }
  }
  impl->sylow_hint = GroupHandle::from_generators(std::move(sgens), domain);
  return ModuleRep{impl};
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// Pair-orbit labels for the image group of the generators; these orbital
// 0/1 matrices span the commutant of a permutation module.
std::vector<int> orbital_ids(const std::vector<std::vector<int>>& gen_images, int d, int& count) {
  std::vector<int> id(static_cast<std::size_t>(d) * d, -1);
  count = 0;
  for (int start = 0; start < d * d; ++start) {
    if (id[start] != -1) continue;
    id[start] = count;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int pr = stack.back();
      stack.pop_back();
      int i = pr / d, j = pr % d;
      for (const auto& img : gen_images) {
        int q = img[i] * d + img[j];
        if (id[q] == -1) {
          id[q] = count;
          stack.push_back(q);
        }
      }
    }
    ++count;
  }
  return id;
}

std::vector<MatGFp> reduce_to_basis(const std::vector<MatGFp>& span, int dim, int p) {
  // Greedy selection of independent matrices, vectorized row by row.
  std::vector<MatGFp> basis;
  MatGFp acc(0, dim * dim, p);
  int cur_rank = 0;
  for (const auto& m : span) {
    MatGFp stack(cur_rank + 1, dim * dim, p);
    for (int b = 0; b < cur_rank; ++b)
      for (int c = 0; c < dim * dim; ++c) stack.set(b, c, acc.at(b, c));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) stack.set(cur_rank, i * dim + j, m.at(i, j));
    if (stack.rank() > cur_rank) {
      basis.push_back(m);
      acc = stack;
      ++cur_rank;
    }
  }
  return basis;
}

struct Node {
  MatGFp rows;      // s x d: basis of the subspace in original coordinates
  MatGFp section;   // d x s: rows * section = identity
  std::vector<MatGFp> commutant;  // basis of End, in node coordinates (s x s)
};

MatGFp node_restrict(const Node& n, const MatGFp& original_endo) {
  return n.rows * original_endo * n.section;
}

// Splits the node along a stable Fitting power with 0 < rank < dim.
// Returns the two children.
std::pair<Node, Node> split_node(const Node& n, const MatGFp& stable, int p) {
  int s = n.rows.rows();
  // Row vectors act from the left of `stable`; the invariant pair is the
  // row space and the left kernel, reached through the transpose.
  MatGFp t(stable.cols(), stable.rows(), p);
  for (int i = 0; i < stable.rows(); ++i)
    for (int j = 0; j < stable.cols(); ++j) t.set(j, i, stable.at(i, j));
  MatGFp im_cols = t.colspace_basis();    // columns = row-space vectors of stable
  MatGFp ker_cols = t.nullspace_basis();  // columns = left-kernel vectors
  int a = im_cols.cols(), b = ker_cols.cols();
  if (a + b != s) throw TheoremViolation("fitting split ranks do not add up");
  MatGFp U(s, s, p);  // rows: first a = image basis, last b = kernel basis
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < s; ++j) U.set(i, j, im_cols.at(j, i));
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < s; ++j) U.set(a + i, j, ker_cols.at(j, i));
  MatGFp Uinv = U.inverse();

  auto child = [&](int offset, int size) {
    Node c;
    MatGFp sel(size, s, p);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < s; ++j) sel.set(i, j, U.at(offset + i, j));
    c.rows = sel * n.rows;
    std::vector<int> cols(size);
    for (int i = 0; i < size; ++i) cols[i] = offset + i;
    MatGFp secsel = Uinv.columns(cols);  // s x size
    c.section = n.section * secsel;
    for (const auto& B : n.commutant) {
      MatGFp Bc = sel * B * secsel;
      if (!Bc.is_zero()) c.commutant.push_back(Bc);
    }
    c.commutant = reduce_to_basis(c.commutant, size, p);
    return c;
  };
  return {child(0, a), child(a, b)};
}

}  // namespace

DecompReport decompose(const ModuleRep& M, std::uint64_t seed, const DecompOptions& opt) {
  const int d = M.dim();
  const int p = M.p();
  if (d > opt.dim_cap) throw CapExceeded("module dimension exceeds cap");
  DecompReport report;
  report.dim = d;
  report.p = p;

  std::vector<std::vector<int>> gen_images;
  for (const auto& g : M.group().generators()) gen_images.push_back(M.basis_image(g));

  int orbital_count = 0;
  std::vector<int> oid = orbital_ids(gen_images, d, orbital_count);

  GroupHandle P = M.sylow(opt.group_cap);
  const auto& pelems = P.elements(opt.group_cap);
  MatGFp norm(d, d, p);
  for (const auto& g : pelems) {
    auto img = M.basis_image(g);
    for (int i = 0; i < d; ++i) norm.set(i, img[i], (norm.at(i, img[i]) + 1) % p);
  }
  const auto psize = pelems.size();

  std::mt19937_64 rng(seed);
  auto random_from_orbitals = [&]() {
    std::vector<std::uint32_t> coef(orbital_count);
    for (auto& c : coef) c = static_cast<std::uint32_t>(rng() % p);
    MatGFp f(d, d, p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) f.set(i, j, coef[oid[static_cast<std::size_t>(i) * d + j]]);
    return f;
  };

  Node top;
  top.rows = MatGFp::identity(d, p);
  top.section = MatGFp::identity(d, p);
  // materialize orbital basis (top-level commutant)
  for (int o = 0; o < orbital_count; ++o) {
    MatGFp E(d, d, p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (oid[static_cast<std::size_t>(i) * d + j] == o) E.set(i, j, 1);
    top.commutant.push_back(E);
  }

  std::vector<Node> work{std::move(top)};
  std::vector<SummandInfo> leaves;

  auto fitting_try = [&](Node& n, const MatGFp& f, std::pair<Node, Node>& out) {
    MatGFp st = f.stable_power();
    int r = st.rank();
    if (r == 0 || r == n.rows.rows()) return false;
    out = split_node(n, st, p);
    return true;
  };

  while (!work.empty()) {
    Node n = std::move(work.back());
    work.pop_back();
    int s = n.rows.rows();

    if (s == 0) continue;
    bool split = false;
    std::pair<Node, Node> children;

    if (n.commutant.size() > 1) {
      for (int t = 0; t < opt.random_tries && !split; ++t) {
        MatGFp f(s, s, p);
        if (s == d && static_cast<int>(n.commutant.size()) == orbital_count &&
            n.rows == MatGFp::identity(d, p)) {
          f = random_from_orbitals();
        } else {
          for (const auto& B : n.commutant) {
            auto c = static_cast<std::uint32_t>(rng() % p);
            if (c) f = f + B.scaled(c);
          }
        }
        split = fitting_try(n, f, children);
      }
    }

    bool confirmed = false;
    if (!split) {
      std::size_t c = n.commutant.size();
      if (c <= 1) {
        confirmed = true;  // End = k, local
      } else {
        // roughly (p^c - 1)/(p - 1) elements to test up to scalars
        std::uint64_t combos = 1;
        bool overflow = false;
        for (std::size_t i = 0; i + 1 < c; ++i) {
          combos *= p;
          if (combos > opt.exhaust_elems) {
            overflow = true;
            break;
          }
        }
        if (!overflow) {
          // enumerate f = sum coef_i B_i with first nonzero coefficient 1
          std::vector<std::uint32_t> coef(c, 0);
          std::function<bool(std::size_t, bool)> enumerate = [&](std::size_t idx, bool leading_set) -> bool {
            if (idx == c) {
              if (!leading_set) return false;
              MatGFp f(s, s, p);
              bool nz = false;
              for (std::size_t i = 0; i < c; ++i)
                if (coef[i]) {
                  f = f + n.commutant[i].scaled(coef[i]);
                  nz = true;
                }
              if (!nz) return false;
              return fitting_try(n, f, children);
            }
            if (!leading_set) {
              coef[idx] = 0;
              if (enumerate(idx + 1, false)) return true;
              coef[idx] = 1;
              if (enumerate(idx + 1, true)) return true;
              coef[idx] = 0;
              return false;
            }
            for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(p); ++v) {
              coef[idx] = v;
              if (enumerate(idx + 1, true)) return true;
            }
            coef[idx] = 0;
            return false;
          };
          split = enumerate(0, false);
          if (!split) confirmed = true;  // no nontrivial idempotent exists
        }
      }
    }

    if (split) {
      work.push_back(std::move(children.first));
      work.push_back(std::move(children.second));
      continue;
    }

    SummandInfo leaf;
    leaf.dim = s;
    leaf.confirmed = confirmed;
    MatGFp norm_here = node_restrict(n, norm);
    leaf.projective =
        static_cast<std::uint64_t>(norm_here.rank()) * psize == static_cast<std::uint64_t>(s);
    leaf.basis_rows = n.rows;
    if (!confirmed) report.inconclusive = true;
    leaves.push_back(std::move(leaf));
  }

  std::sort(leaves.begin(), leaves.end(), [](const SummandInfo& a, const SummandInfo& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.projective < b.projective;
  });
  report.summands = std::move(leaves);
  int np = 0, total_dim = 0;
  for (const auto& sm : report.summands) {
    if (sm.projective && sm.confirmed) ++np;
    total_dim += sm.dim;
  }
  if (total_dim != d) throw TheoremViolation("summand dimensions do not add up");
  report.np = np;
  return report;
}

bool has_projective_summand(const ModuleRep& M, std::uint64_t seed, const DecompOptions& opt) {
  auto rep = decompose(M, seed, opt);
  for (const auto& s : rep.summands)
    if (s.projective) return true;  // a projective piece has projective summands
  if (rep.inconclusive)
    throw DecompositionInconclusive("cannot settle projective summand existence");
  return false;
}

int np_count(const ModuleRep& M, std::uint64_t seed, const DecompOptions& opt) {
  auto rep = decompose(M, seed, opt);
  if (rep.inconclusive) throw DecompositionInconclusive("decomposition incomplete");
  return rep.np;
}

int norm_rank(const ModuleRep& M, const GroupHandle& P, std::uint64_t cap) {
  const auto& elems = P.elements(cap);
  if (!is_p_power(elems.size(), M.p()))
    throw NotPGroup("norm rank needs a p-group for the module's characteristic");
  int d = M.dim();
  MatGFp norm(d, d, M.p());
  for (const auto& g : elems) {
    auto img = M.basis_image(g);
    for (int i = 0; i < d; ++i) norm.set(i, img[i], (norm.at(i, img[i]) + 1) % M.p());
  }
  return norm.rank();
}

bool is_projective_over_pgroup(const ModuleRep& M, const GroupHandle& P, std::uint64_t cap) {
  return static_cast<std::uint64_t>(norm_rank(M, P, cap)) * P.order(cap) ==
         static_cast<std::uint64_t>(M.dim());
}

}  // namespace fpsets
