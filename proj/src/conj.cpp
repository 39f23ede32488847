#include "gsp4/conj.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gsp4/parallel.hpp"

namespace gsp4 {

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// The root of every set is its least index, i.e. its least packed element.
void unite(std::vector<std::uint32_t>& parent, std::uint32_t a, std::uint32_t b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a == b) return;
  if (a < b)
    parent[b] = a;
  else
    parent[a] = b;
}

}  // namespace

std::shared_ptr<const ClassData> ClassData::compute(std::shared_ptr<const GroupEnumeration> group) {
  std::shared_ptr<ClassData> cd(new ClassData());
  cd->group_ = std::move(group);
  const GroupEnumeration& G = *cd->group_;
  const MatrixArith& ar = G.arith();
  const std::size_t n = G.size();

  std::vector<Mat4> gens = G.generators();
  std::vector<Mat4> gens_inv;
  for (const Mat4& s : gens) gens_inv.push_back(ar.inverse(s));

  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  // Conjugation images are computed in parallel, unions applied in index order.
  constexpr std::size_t block = 1 << 14;
  std::vector<std::uint32_t> images;
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t end = std::min(n, start + block);
    images.assign((end - start) * gens.size(), 0);
    parallel_for(end - start, [&](std::size_t off) {
      const Mat4 g = G.element(start + off);
      for (std::size_t s = 0; s < gens.size(); ++s)
        images[off * gens.size() + s] =
            static_cast<std::uint32_t>(G.index_of(ar.conjugate(gens[s], gens_inv[s], g)));
    });
    for (std::size_t off = 0; off < end - start; ++off)
      for (std::size_t s = 0; s < gens.size(); ++s)
        unite(parent, static_cast<std::uint32_t>(start + off), images[off * gens.size() + s]);
  }

  std::vector<std::uint32_t> roots;
  std::vector<std::uint64_t> root_sizes(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t r = find_root(parent, static_cast<std::uint32_t>(i));
    if (r == i) roots.push_back(r);
    ++root_sizes[r];
  }
  struct Key {
    int order;
    std::uint64_t size;
    std::uint64_t packed;
    std::uint32_t root;
  };
  std::vector<Key> keys;
  for (std::uint32_t r : roots) keys.push_back({ar.order(G.element(r)), root_sizes[r], G.packed(r), r});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.order, a.size, a.packed) < std::tie(b.order, b.size, b.packed);
  });
  std::vector<std::uint32_t> class_of_root(n, 0);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    class_of_root[keys[k].root] = static_cast<std::uint32_t>(k);
    cd->reps_.push_back(G.element(keys[k].root));
    cd->sizes_.push_back(keys[k].size);
    cd->orders_.push_back(keys[k].order);
  }
  cd->class_index_.resize(n);
  for (std::size_t i = 0; i < n; ++i) cd->class_index_[i] = class_of_root[parent[i]];
  cd->group_order_ = n;
  cd->finish();
  return cd;
}

std::shared_ptr<const ClassData> ClassData::product_with_center(std::shared_ptr<const ClassData> sp_classes) {
  const Field& f = sp_classes->field();
  if (!f.is_even()) throw std::invalid_argument("G = Sp(4,q) x Z holds for even q only");
  if (sp_classes->is_center_product()) throw std::invalid_argument("already a product");
  std::shared_ptr<ClassData> cd(new ClassData());
  cd->group_ = sp_classes->group_;
  cd->base_ = sp_classes;
  cd->center_order_ = f.q() - 1;
  const MatrixArith& ar = cd->arith();
  for (std::size_t c = 0; c < sp_classes->num_classes(); ++c)
    for (int zl = 0; zl < cd->center_order_; ++zl) {
      const int z = f.exp(zl);
      cd->reps_.push_back(ar.scale(z, sp_classes->representative(c)));
      cd->sizes_.push_back(sp_classes->class_size(c));
      cd->orders_.push_back(std::lcm(sp_classes->element_order(c), f.multiplicative_order(z)));
    }
  cd->group_order_ = sp_classes->group_order() * static_cast<std::uint64_t>(cd->center_order_);
  cd->finish();
  return cd;
}

void ClassData::finish() {
  exponent_ = 1;
  for (int o : orders_) exponent_ = std::lcm(exponent_, o);
  const Mat4 id = arith().identity();
  identity_ = class_of(id);
  inverse_.resize(reps_.size());
  for (std::size_t k = 0; k < reps_.size(); ++k) inverse_[k] = class_of(arith().inverse(reps_[k]));
  std::uint64_t total = 0;
  for (auto s : sizes_) total += s;
  if (total != group_order_) throw std::logic_error("class sizes do not sum to the group order");
}

std::size_t ClassData::power_class(std::size_t k, long long t) const {
  return class_of(arith().power(reps_[k], t));
}

std::size_t ClassData::class_of(const Mat4& g) const {
  if (!base_) return class_index_[group_->index_of(g)];
  const Field& f = field();
  const auto mu = arith().multiplier(g);
  if (!mu) throw std::invalid_argument("class_of: matrix is not in GSp(4,q)");
  const int s = *f.sqrt(*mu);
  const std::size_t c = base_->class_of(arith().scale(f.inv(s), g));
  return c * center_order_ + static_cast<std::size_t>(f.log(s));
}

std::shared_ptr<const ClassData> conjugacy_classes(std::shared_ptr<const GroupEnumeration> group) {
  return ClassData::compute(std::move(group));
}

ClassConstants ClassConstants::compute(const ClassData& cd) {
  if (cd.is_center_product()) throw std::invalid_argument("class constants need an enumerated group");
  const std::size_t n = cd.num_classes();
  const GroupEnumeration& G = cd.enumeration();
  const MatrixArith& ar = cd.arith();
  ClassConstants out;
  out.n_ = n;
  out.data_.assign(n * n * n, 0);
  // For fixed z_k: a_{ijk} = #{x in C_i : x^{-1} z_k in C_j}.
  std::vector<std::vector<std::uint64_t>> slabs(n, std::vector<std::uint64_t>(n * n, 0));
  parallel_for(n, [&](std::size_t k) {
    const Mat4& z = cd.representative(k);
    auto& slab = slabs[k];
    for (std::size_t e = 0; e < G.size(); ++e) {
      const Mat4 x = G.element(e);
      const std::size_t i = cd.class_of_index(e);
      const std::size_t j = cd.class_of(ar.mul(ar.inverse(x), z));
      ++slab[i * n + j];
    }
  });
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.data_[(i * n + j) * n + k] = slabs[k][i * n + j];
  return out;
}

std::uint64_t class_constant_at(const ClassData& cd, std::size_t i, std::size_t j, const Mat4& z0) {
  if (cd.is_center_product()) throw std::invalid_argument("class constants need an enumerated group");
  const GroupEnumeration& G = cd.enumeration();
  const MatrixArith& ar = cd.arith();
  std::uint64_t count = 0;
  for (std::size_t e = 0; e < G.size(); ++e) {
    if (cd.class_of_index(e) != i) continue;
    if (cd.class_of(ar.mul(ar.inverse(G.element(e)), z0)) == j) ++count;
  }
  return count;
}

std::uint64_t class_constants(const ClassData& cd, std::size_t i, std::size_t j, std::size_t k) {
  return class_constant_at(cd, i, j, cd.representative(k));
}

// ---------------------------------------------------------------------------

const char* to_string(Orbit2x2 o) {
  switch (o) {
    case Orbit2x2::zero: return "zero";
    case Orbit2x2::rank1: return "rank1";
    case Orbit2x2::det_square: return "det_square";
    case Orbit2x2::det_nonsquare: return "det_nonsquare";
    case Orbit2x2::det_nonzero_diag: return "det_nonzero_diag";
    case Orbit2x2::det_nonzero_mixed: return "det_nonzero_mixed";
  }
  return "?";
}

Orbit2x2 canonical_form_2x2(const Field& f, int x, int y, int z) {
  if (x == 0 && y == 0 && z == 0) return Orbit2x2::zero;
  const int det = f.sub(f.mul(y, y), f.mul(x, z));
  if (det == 0) return Orbit2x2::rank1;
  if (f.is_even()) return (x == 0 && z == 0) ? Orbit2x2::det_nonzero_diag : Orbit2x2::det_nonzero_mixed;
  return f.square_class(det) == SquareClass::square ? Orbit2x2::det_square : Orbit2x2::det_nonsquare;
}

std::array<int, 3> orbit_representative(const Field& f, Orbit2x2 o) {
  switch (o) {
    case Orbit2x2::zero: return {0, 0, 0};
    case Orbit2x2::rank1: return {0, 0, 1};            // [[0,1],[0,0]]
    case Orbit2x2::det_square: return {0, 1, 0};       // identity
    case Orbit2x2::det_nonsquare: return {1, 0, f.neg(f.xi())};  // [[0,-xi],[1,0]]
    case Orbit2x2::det_nonzero_diag: return {0, 1, 0};
    case Orbit2x2::det_nonzero_mixed: return {0, 1, 1};  // [[1,1],[0,1]]
  }
  throw std::invalid_argument("unknown orbit");
}

std::array<int, 3> act_2x2(const Field& f, const std::array<int, 4>& A, int u, const std::array<int, 3>& xyz) {
  using M2 = std::array<int, 4>;
  auto mul2 = [&](const M2& p, const M2& r) {
    return M2{f.add(f.mul(p[0], r[0]), f.mul(p[1], r[2])), f.add(f.mul(p[0], r[1]), f.mul(p[1], r[3])),
              f.add(f.mul(p[2], r[0]), f.mul(p[3], r[2])), f.add(f.mul(p[2], r[1]), f.mul(p[3], r[3]))};
  };
  const int det = f.sub(f.mul(A[0], A[3]), f.mul(A[1], A[2]));
  if (det == 0 || u == 0) throw std::invalid_argument("act_2x2: A must be invertible and u nonzero");
  const int di = f.inv(det);
  const M2 Ap{f.mul(di, A[0]), f.mul(di, f.neg(A[1])), f.mul(di, f.neg(A[2])), f.mul(di, A[3])};
  const int dp = f.inv(f.sub(f.mul(Ap[0], Ap[3]), f.mul(Ap[1], Ap[2])));
  const M2 Ap_inv{f.mul(dp, Ap[3]), f.mul(dp, f.neg(Ap[1])), f.mul(dp, f.neg(Ap[2])), f.mul(dp, Ap[0])};
  const auto [x, y, z] = xyz;
  const M2 X{y, z, x, y};
  M2 Y = mul2(mul2(A, X), Ap_inv);
  for (int& e : Y) e = f.mul(u, e);
  if (Y[0] != Y[3]) throw std::logic_error("act_2x2 left the [[y,z],[x,y]] shape");
  return {Y[2], Y[0], Y[1]};
}

std::vector<int> orbits_2x2(const Field& f) {
  const int q = f.q();
  const int g = f.generator();
  std::vector<std::pair<std::array<int, 4>, int>> moves;
  moves.push_back({{g, 0, 0, 1}, 1});
  moves.push_back({{0, 1, 1, 0}, 1});
  for (int i = 0, beta = 1; i < f.n(); ++i, beta *= f.p()) moves.push_back({{1, beta, 0, 1}, 1});
  moves.push_back({{1, 0, 0, 1}, g});

  std::vector<int> orbit(static_cast<std::size_t>(q) * q * q, -1);
  int next = 0;
  for (std::size_t start = 0; start < orbit.size(); ++start) {
    if (orbit[start] >= 0) continue;
    std::vector<std::size_t> stack{start};
    orbit[start] = next;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::array<int, 3> xyz{static_cast<int>(idx / (q * q)), static_cast<int>((idx / q) % q),
                                   static_cast<int>(idx % q)};
      for (const auto& [A, u] : moves) {
        const auto r = act_2x2(f, A, u, xyz);
        const std::size_t j = siegel_index(q, r[0], r[1], r[2]);
        if (orbit[j] < 0) {
          orbit[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  return orbit;
}

CanonicalFormReport check_canonical_forms(const Field& f, std::uint64_t seed, int moves_per_orbit) {
  CanonicalFormReport rep;
  auto fail = [&](const std::string& msg) {
    if (rep.passed) rep.failure = msg;
    rep.passed = false;
  };
  const int q = f.q();
  const std::vector<int> orbit = orbits_2x2(f);
  std::map<int, std::set<Orbit2x2>> labels_of_orbit;
  std::map<Orbit2x2, std::set<int>> orbits_of_label;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) {
        const int id = orbit[siegel_index(q, x, y, z)];
        const Orbit2x2 label = canonical_form_2x2(f, x, y, z);
        labels_of_orbit[id].insert(label);
        orbits_of_label[label].insert(id);
      }
  rep.orbits = labels_of_orbit.size();
  if (rep.orbits != 4) fail("expected 4 orbits, found " + std::to_string(rep.orbits));
  for (const auto& [id, labels] : labels_of_orbit)
    if (labels.size() != 1) fail("orbit " + std::to_string(id) + " mixes canonical forms");
  for (const auto& [label, ids] : orbits_of_label)
    if (ids.size() != 1) fail(std::string("canonical form ") + to_string(label) + " spans several orbits");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(0, q - 1), unit(1, q - 1);
  for (const auto& [label, ids] : orbits_of_label) {
    const auto rep_xyz = orbit_representative(f, label);
    if (canonical_form_2x2(f, rep_xyz[0], rep_xyz[1], rep_xyz[2]) != label)
      fail(std::string("representative of ") + to_string(label) + " has another canonical form");
    auto xyz = rep_xyz;
    for (int m = 0; m < moves_per_orbit; ++m) {
      std::array<int, 4> A;
      do {
        A = {entry(rng), entry(rng), entry(rng), entry(rng)};
      } while (f.sub(f.mul(A[0], A[3]), f.mul(A[1], A[2])) == 0);
      xyz = act_2x2(f, A, unit(rng), xyz);
      ++rep.random_moves;
      if (canonical_form_2x2(f, xyz[0], xyz[1], xyz[2]) != label)
        fail(std::string("a random move leaves the orbit of ") + to_string(label));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(TNFamily f) {
  switch (f) {
    case TNFamily::s_zero: return "s=0";
    case TNFamily::D0: return "D0";
    case TNFamily::D1: return "D1";
    case TNFamily::F0: return "F0";
    case TNFamily::F1: return "F1";
    case TNFamily::C2: return "C2";
    case TNFamily::D2: return "D2";
    case TNFamily::C4: return "C4";
    case TNFamily::D4: return "D4";
  }
  return "?";
}

TNTypeLabel tn_type(const MatrixArith& arith, const TorusStructure& torus, const BesselElement& g) {
  const Field& f = arith.field();
  const TorusElement& t = torus.elements().at(g.torus_index);
  if (t.s == 0) return {TNFamily::s_zero, {}};
  const bool zero_form = bessel_form(f, torus.datum(), g.x, g.y, g.z) == 0;
  const QuadraticExtension& E = torus.extension();
  const Field& F = E.big();
  TNTypeLabel label;
  if (!f.is_even()) {
    if (torus.kind() == TorusKind::split) {
      int ap = *E.restrict(torus.alpha_plus(t)), am = *E.restrict(torus.alpha_minus(t));
      if (am < ap) std::swap(ap, am);
      label.family = zero_form ? TNFamily::D0 : TNFamily::D1;
      label.parameter = {ap, am};
    } else {
      int a = torus.alpha_plus(t), aq = E.frobenius(a);
      if (aq < a) std::swap(a, aq);
      label.family = zero_form ? TNFamily::F0 : TNFamily::F1;
      label.parameter = {a, aq};
    }
    return label;
  }
  // even q: eigenvalues of mu(g)^{-1/2} g are lambda^{+-1} with lambda in <gamma> or <eta>
  const int mu = *arith.multiplier(t.matrix);
  const int root = *f.sqrt(mu);
  const int lambda = F.div(torus.alpha_plus(t), E.embed(root));
  const bool split = torus.kind() == TorusKind::split;
  const int base = split ? E.gamma() : E.eta();
  const int order = split ? f.q() - 1 : f.q() + 1;
  int i = -1;
  for (int k = 0, y = 1; k < order; ++k, y = F.mul(y, base))
    if (y == lambda) {
      i = k;
      break;
    }
  if (i < 0) throw std::logic_error("normalized eigenvalue outside <gamma>/<eta>");
  if (split)
    label.family = zero_form ? TNFamily::C2 : TNFamily::D2;
  else
    label.family = zero_form ? TNFamily::C4 : TNFamily::D4;
  label.parameter = {std::min(i, order - i)};
  return label;
}

TypeSoundnessReport check_type_soundness(const ClassData& cd) {
  const Field& f = cd.field();
  const MatrixArith& ar = cd.arith();
  TypeSoundnessReport rep;
  auto fail = [&](const std::string& msg) {
    if (rep.passed) rep.failure = msg;
    rep.passed = false;
  };
  // Even q: compare classes of mu^{-1/2} g, i.e. the Sp-component.
  auto normalized_class = [&](const Mat4& m) {
    const std::size_t k = cd.class_of(m);
    return cd.is_center_product() ? cd.base_class(k) : k;
  };

  std::map<TNTypeLabel, std::size_t> label_class;
  std::map<TNFamily, std::set<std::size_t>> family_classes;
  std::set<std::size_t> hit;
  for (const BesselDatum& d : nondegenerate_data(f)) {
    const TorusStructure T = subgroup_T(ar, d);
    for (const BesselElement& g : subgroup_R(ar, T)) {
      const TNTypeLabel label = tn_type(ar, T, g);
      if (label.family == TNFamily::s_zero) continue;
      ++rep.labelled_elements;
      const std::size_t k = normalized_class(g.matrix);
      hit.insert(k);
      auto [it, inserted] = label_class.emplace(label, k);
      if (!inserted && it->second != k) {
        std::ostringstream msg;
        msg << "label " << to_string(label.family) << " at datum (" << d.a << "," << d.b << "," << d.c
            << ") hits classes " << it->second << " and " << k;
        fail(msg.str());
      }
      family_classes[label.family].insert(k);
    }
  }
  for (auto a = family_classes.begin(); a != family_classes.end(); ++a)
    for (auto b = std::next(a); b != family_classes.end(); ++b)
      for (std::size_t k : a->second)
        if (b->second.count(k))
          fail(std::string("families ") + to_string(a->first) + " and " + to_string(b->first) + " share class " +
               std::to_string(k));
  rep.distinct_labels = label_class.size();
  rep.classes_hit = hit.size();

  // The four orbit representatives of N.
  std::map<Orbit2x2, std::size_t> rep_class;
  const auto orbits = f.is_even()
                          ? std::vector<Orbit2x2>{Orbit2x2::zero, Orbit2x2::rank1, Orbit2x2::det_nonzero_diag,
                                                  Orbit2x2::det_nonzero_mixed}
                          : std::vector<Orbit2x2>{Orbit2x2::zero, Orbit2x2::rank1, Orbit2x2::det_square,
                                                  Orbit2x2::det_nonsquare};
  std::set<std::size_t> distinct;
  for (Orbit2x2 o : orbits) {
    const auto [x, y, z] = orbit_representative(f, o);
    rep_class[o] = cd.class_of(ar.siegel_unipotent(x, y, z));
    distinct.insert(rep_class[o]);
  }
  if (distinct.size() != 4) fail("the four N representatives do not lie in four distinct classes");
  const int q = f.q();
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z)
        if (cd.class_of(ar.siegel_unipotent(x, y, z)) != rep_class[canonical_form_2x2(f, x, y, z)])
          fail("n(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
               ") is not conjugate to its orbit representative");
  return rep;
}

}  // namespace gsp4
