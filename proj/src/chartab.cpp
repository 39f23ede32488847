#include "gsp4/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gsp4/parallel.hpp"

namespace gsp4 {

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Matrix = std::vector<Vec>;

struct ModArith {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % p;
    for (a %= p; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const {
    if (a % p == 0) throw std::domain_error("inverse of zero mod l");
    return pow(a, p - 2);
  }
};

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(const ModArith& m) {
  std::vector<u64> factors;
  u64 n = m.p - 1;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) factors.push_back(n);
  for (u64 g = 2; g < m.p; ++g) {
    bool ok = true;
    for (u64 f : factors)
      if (m.pow(g, (m.p - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

/// Row-reduces the rows of a in place and drops zero rows.
std::vector<std::size_t> rref(const ModArith& m, Matrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const u64 inv = m.inv(a[row][c]);
    for (auto& x : a[row]) x = m.mul(x, inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const u64 f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] = m.sub(a[r][k], m.mul(f, a[row][k]));
    }
    pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  return pivots;
}

/// Basis of {x : A x = 0}.
Matrix nullspace(const ModArith& m, Matrix a) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  const auto pivots = rref(m, a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m.sub(0, a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial (low degree first) via reduction to Hessenberg form.
Vec charpoly(const ModArith& m, Matrix h) {
  const std::size_t n = h.size();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t r = c + 1;
    while (r < n && h[r][c] == 0) ++r;
    if (r == n) continue;
    if (r != c + 1) {
      std::swap(h[r], h[c + 1]);
      for (auto& row : h) std::swap(row[r], row[c + 1]);
    }
    const u64 inv = m.inv(h[c + 1][c]);
    for (std::size_t i = c + 2; i < n; ++i) {
      const u64 f = m.mul(h[i][c], inv);
      if (f == 0) continue;
      for (std::size_t k = 0; k < n; ++k) h[i][k] = m.sub(h[i][k], m.mul(f, h[c + 1][k]));
      for (std::size_t k = 0; k < n; ++k) h[k][c + 1] = m.add(h[k][c + 1], m.mul(f, h[k][i]));
    }
  }
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    Vec next(k + 1, 0);
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      next[i + 1] = m.add(next[i + 1], p[k - 1][i]);
      next[i] = m.sub(next[i], m.mul(h[k - 1][k - 1], p[k - 1][i]));
    }
    u64 sub = 1;
    for (std::size_t i = 1; i < k; ++i) {
      sub = m.mul(sub, h[k - i][k - i - 1]);
      const u64 coef = m.mul(sub, h[k - i - 1][k - 1]);
      if (coef == 0) continue;
      for (std::size_t t = 0; t < p[k - i - 1].size(); ++t) next[t] = m.sub(next[t], m.mul(coef, p[k - i - 1][t]));
    }
    p[k] = std::move(next);
  }
  return p[n];
}

std::vector<u64> roots(const ModArith& m, const Vec& poly) {
  std::vector<u64> out;
  for (u64 x = 0; x < m.p; ++x) {
    u64 v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = m.add(m.mul(v, x), poly[i]);
    if (v == 0) out.push_back(x);
    if (out.size() + 1 == poly.size()) break;
  }
  return out;
}

int compare_rows(const std::vector<Cyclotomic>& a, std::int64_t da, const std::vector<Cyclotomic>& b,
                 std::int64_t db) {
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (int c = Cyclotomic::compare(a[k], b[k]); c != 0) return c;
  return 0;
}

void sort_rows(CharacterTable& ct) {
  std::vector<std::size_t> perm(ct.chars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    return compare_rows(ct.chars[x], ct.degrees[x], ct.chars[y], ct.degrees[y]) < 0;
  });
  std::vector<std::vector<Cyclotomic>> chars;
  std::vector<std::int64_t> degrees;
  for (auto i : perm) {
    chars.push_back(std::move(ct.chars[i]));
    degrees.push_back(ct.degrees[i]);
  }
  ct.chars = std::move(chars);
  ct.degrees = std::move(degrees);
}

/// Common eigenvectors of the class matrices M_j with (M_j)_{ik} = a_{jik}.
Matrix split_eigenspaces(const ModArith& m, const ClassConstants& a, std::size_t identity) {
  const std::size_t n = a.num_classes();
  Matrix full(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) full[i][i] = 1;
  std::vector<Matrix> spaces{full};
  for (std::size_t j = 0; j < n; ++j) {
    if (j == identity) continue;
    if (std::all_of(spaces.begin(), spaces.end(), [](const Matrix& w) { return w.size() == 1; })) break;
    std::vector<Matrix> next;
    for (Matrix& w : spaces) {
      if (w.size() == 1) {
        next.push_back(std::move(w));
        continue;
      }
      const std::size_t d = w.size();
      std::vector<std::size_t> pivots;
      for (const auto& row : w) pivots.push_back(std::find_if(row.begin(), row.end(), [](u64 x) { return x; }) - row.begin());
      // Images M_j w_r, written in the basis w through the pivot coordinates.
      Matrix restricted(d, Vec(d, 0));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) {
          u64 acc = 0;
          const std::size_t i = pivots[s];
          for (std::size_t k = 0; k < n; ++k)
            if (w[r][k]) acc = m.add(acc, m.mul(a(j, i, k) % m.p, w[r][k]));
          restricted[s][r] = acc;
        }
      const auto lambdas = roots(m, charpoly(m, restricted));
      if (lambdas.size() == 1) {
        next.push_back(std::move(w));
        continue;
      }
      std::size_t total = 0;
      for (u64 lambda : lambdas) {
        Matrix shifted = restricted;
        for (std::size_t s = 0; s < d; ++s) shifted[s][s] = m.sub(shifted[s][s], lambda);
        Matrix sub;
        for (const Vec& coords : nullspace(m, shifted)) {
          Vec v(n, 0);
          for (std::size_t r = 0; r < d; ++r)
            if (coords[r])
              for (std::size_t k = 0; k < n; ++k) v[k] = m.add(v[k], m.mul(coords[r], w[r][k]));
          sub.push_back(std::move(v));
        }
        rref(m, sub);
        total += sub.size();
        next.push_back(std::move(sub));
      }
      if (total != d) throw std::logic_error("class matrices are not simultaneously diagonalizable mod l");
    }
    spaces = std::move(next);
  }
  Matrix out;
  for (auto& w : spaces) {
    if (w.size() != 1) throw std::logic_error("eigenspace splitting did not terminate in lines");
    out.push_back(std::move(w[0]));
  }
  return out;
}

}  // namespace

std::uint64_t dixon_prime(int exponent, std::uint64_t order) {
  for (u64 l = static_cast<u64>(exponent) + 1;; l += static_cast<u64>(exponent))
    if (l * l > 4 * order && is_prime_u64(l)) return l;
}

CharacterTable dixon_schneider(std::shared_ptr<const ClassData> cd) {
  const std::size_t n = cd->num_classes();
  const u64 order = cd->group_order();
  const int e = cd->exponent();
  const ModArith m{dixon_prime(e, order)};
  const u64 z = m.pow(primitive_root(m), (m.p - 1) / static_cast<u64>(e));
  const std::size_t id = cd->identity_class();

  const ClassConstants constants = ClassConstants::compute(*cd);
  Matrix vectors = split_eigenspaces(m, constants, id);
  if (vectors.size() != n) throw std::logic_error("wrong number of irreducible characters");

  std::vector<std::vector<std::size_t>> powers(n);
  for (std::size_t k = 0; k < n; ++k)
    for (int t = 0; t < cd->element_order(k); ++t) powers[k].push_back(cd->power_class(k, t));

  const auto max_degree = static_cast<u64>(std::sqrt(static_cast<long double>(order)));
  CharacterTable ct;
  ct.classes = cd;
  ct.conductor = e;
  ct.prime = m.p;
  ct.chars.resize(n);
  ct.degrees.resize(n);
  parallel_for(n, [&](std::size_t row) {
    Vec v = vectors[row];
    const u64 inv = m.inv(v[id]);
    for (auto& x : v) x = m.mul(x, inv);
    u64 s = 0;
    for (std::size_t k = 0; k < n; ++k)
      s = m.add(s, m.mul(m.mul(v[k], v[cd->inverse_class(k)]), m.inv(cd->class_size(k) % m.p)));
    const u64 d2 = m.mul(order % m.p, m.inv(s));
    u64 degree = 0;
    for (u64 d = 1; d <= max_degree; ++d)
      if (m.mul(d, d) == d2 && order % d == 0) {
        degree = d;
        break;
      }
    if (degree == 0) throw std::logic_error("no admissible degree for a character");
    Vec chi(n);
    for (std::size_t k = 0; k < n; ++k) chi[k] = m.mul(m.mul(v[k], degree), m.inv(cd->class_size(k) % m.p));

    std::vector<Cyclotomic> values(n);
    for (std::size_t k = 0; k < n; ++k) {
      const int o = cd->element_order(k);
      const u64 zo = m.pow(z, static_cast<u64>(e / o));
      const u64 zo_inv = m.inv(zo);
      const u64 o_inv = m.inv(static_cast<u64>(o) % m.p);
      std::vector<std::int64_t> dense(o, 0);
      u64 total = 0;
      for (int mm = 0; mm < o; ++mm) {
        u64 acc = 0;
        const u64 step = m.pow(zo_inv, static_cast<u64>(mm));
        u64 w = 1;
        for (int t = 0; t < o; ++t) {
          acc = m.add(acc, m.mul(chi[powers[k][t]], w));
          w = m.mul(w, step);
        }
        const u64 mult = m.mul(acc, o_inv);
        if (mult > degree) throw std::logic_error("eigenvalue multiplicity out of range");
        dense[mm] = static_cast<std::int64_t>(mult);
        total += mult;
      }
      if (total != degree) throw std::logic_error("eigenvalue multiplicities do not add up to the degree");
      values[k] = Cyclotomic::from_group_ring(o, std::move(dense));
    }
    ct.chars[row] = std::move(values);
    ct.degrees[row] = static_cast<std::int64_t>(degree);
  });
  sort_rows(ct);
  return ct;
}

CharacterTable even_q_assembly(const CharacterTable& sp_table) {
  auto g_classes = ClassData::product_with_center(sp_table.classes);
  const int zorder = g_classes->field().q() - 1;
  const Field& f = g_classes->field();
  CharacterTable ct;
  ct.classes = g_classes;
  ct.conductor = g_classes->exponent();
  ct.prime = sp_table.prime;
  for (std::size_t s = 0; s < sp_table.num_rows(); ++s)
    for (int w = 0; w < zorder; ++w) {
      std::vector<Cyclotomic> row(g_classes->num_classes());
      for (std::size_t k = 0; k < row.size(); ++k) {
        const int zl = g_classes->center_log(k);
        const int oz = f.multiplicative_order(f.exp(zl));
        const long long exponent = static_cast<long long>(w) * zl * oz / zorder;
        row[k] = sp_table.value(s, g_classes->base_class(k)) * Cyclotomic::root(oz, exponent);
      }
      ct.chars.push_back(std::move(row));
      ct.degrees.push_back(sp_table.degrees[s]);
    }
  sort_rows(ct);
  return ct;
}

void verify_orthogonality(const CharacterTable& ct) {
  const ClassData& cd = *ct.classes;
  const std::size_t n = cd.num_classes();
  const int e = cd.exponent();
  const auto order = static_cast<std::int64_t>(cd.group_order());
  auto fail = [](const std::string& msg) { throw OrthogonalityError(msg); };
  if (ct.num_rows() != n) fail("number of characters differs from number of classes");
  std::int64_t sum_sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ct.chars[i].size() != n) fail("character row has the wrong length");
    if (ct.value(i, cd.identity_class()) != Cyclotomic::integer(ct.degrees[i])) fail("degree mismatch at identity");
    sum_sq = checked_add(sum_sq, checked_mul(ct.degrees[i], ct.degrees[i]));
    for (std::size_t k = 0; k < n; ++k) {
      if (e % ct.value(i, k).conductor() != 0) fail("value conductor does not divide the exponent");
      if (ct.value(i, cd.inverse_class(k)) != ct.value(i, k).conj()) fail("value at inverse class is not the conjugate");
    }
  }
  if (sum_sq != order) fail("sum of squared degrees is not the group order");

  auto add_product = [&](CyclotomicAccumulator& acc, const Cyclotomic& x, const Cyclotomic& y, std::int64_t w) {
    const auto& cx = x.coefficients();
    const auto& cy = y.coefficients();
    const long long sx = e / x.conductor(), sy = e / y.conductor();
    for (std::size_t a = 0; a < cx.size(); ++a) {
      if (cx[a] == 0) continue;
      for (std::size_t b = 0; b < cy.size(); ++b)
        if (cy[b] != 0)
          acc.add_root(static_cast<long long>(a) * sx - static_cast<long long>(b) * sy,
                       checked_mul(w, checked_mul(cx[a], cy[b])));
    }
  };

  std::vector<std::string> errors(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      CyclotomicAccumulator acc(e);
      for (std::size_t k = 0; k < n; ++k)
        add_product(acc, ct.value(i, k), ct.value(j, k), static_cast<std::int64_t>(cd.class_size(k)));
      if (acc.value() != Cyclotomic::integer(i == j ? order : 0)) {
        std::ostringstream msg;
        msg << "row orthogonality fails for characters " << i << ", " << j;
        errors[i] = msg.str();
        return;
      }
    }
  });
  for (auto& err : errors)
    if (!err.empty()) fail(err);
  parallel_for(n, [&](std::size_t k) {
    for (std::size_t l = k; l < n; ++l) {
      CyclotomicAccumulator acc(e);
      for (std::size_t i = 0; i < n; ++i) add_product(acc, ct.value(i, k), ct.value(i, l), 1);
      const std::int64_t expect = k == l ? order / static_cast<std::int64_t>(cd.class_size(k)) : 0;
      if (acc.value() != Cyclotomic::integer(expect)) {
        std::ostringstream msg;
        msg << "column orthogonality fails for classes " << k << ", " << l;
        errors[k] = msg.str();
        return;
      }
    }
  });
  for (auto& err : errors)
    if (!err.empty()) fail(err);
}

CentralCharacter central_character(const CharacterTable& ct, std::size_t row) {
  const ClassData& cd = *ct.classes;
  const Field& f = cd.field();
  CentralCharacter out;
  out.order = f.q() - 1;
  const std::int64_t degree = ct.degrees[row];
  for (int k = 0; k < out.order; ++k) {
    const Cyclotomic v = ct.value(row, cd.class_of(cd.arith().scalar(f.exp(k))));
    out.values.push_back(v);
  }
  bool found = false;
  for (int w = 0; w < out.order && !found; ++w)
    if (out.values.size() > 1 ? out.values[1] == Cyclotomic::root(out.order, w) * degree : w == 0) {
      out.index = w;
      found = true;
    }
  if (!found) throw std::logic_error("central value is not a scalar multiple of a root of unity");
  for (int k = 0; k < out.order; ++k) {
    if (out.values[k] != Cyclotomic::root(out.order, static_cast<long long>(out.index) * k) * degree)
      throw std::logic_error("restriction to the centre is not a multiple of a character");
    out.values[k] = Cyclotomic::root(out.order, static_cast<long long>(out.index) * k);
  }
  return out;
}

std::shared_ptr<const ClassData> compute_group_classes(std::shared_ptr<const Field> f,
                                                       const EnumerationOptions& opts) {
  if (f->is_even()) {
    auto sp = GroupEnumeration::build(f, GroupKind::sp, opts);
    return ClassData::product_with_center(ClassData::compute(sp));
  }
  return ClassData::compute(GroupEnumeration::build(f, GroupKind::gsp, opts));
}

CharacterTable compute_character_table(std::shared_ptr<const Field> f, const TableOptions& opts) {
  if (f->is_even()) {
    auto sp = GroupEnumeration::build(f, GroupKind::sp, opts.enumeration);
    return even_q_assembly(dixon_schneider(ClassData::compute(sp)));
  }
  return dixon_schneider(ClassData::compute(GroupEnumeration::build(f, GroupKind::gsp, opts.enumeration)));
}

}  // namespace gsp4
