// The symmetric-coalgebra engine on a shifted alphabet: monomials in Sym(V)
// for a graded letter set V (odd letters square to zero), comultiplication
// partitions, coderivations, and coalgebra maps into another Sym. This is the
// substrate for bar complexes, twisting cochains, Maurer-Cartan checks and
// Chevalley-Eilenberg differentials; every sign here is a Koszul sign in the
// letter degrees.
#ifndef ALGD_SYM_HPP
#define ALGD_SYM_HPP

#include "algebroid.hpp"

namespace algd {

using Mono = std::vector<int>;           // sorted letter ids
using SymVec = std::map<Mono, Scalar>;   // element of Sym(V)

struct SymSpace {
  std::vector<int> deg;  // per letter

  int mono_degree(const Mono& m) const
  {
    int d = 0;
    for (int id : m) d += deg[id];
    return d;
  }

  /// Insert a letter into a sorted monomial: (sign, monomial), sign 0 when an
  /// odd letter repeats.
  std::pair<int, Mono> insert(const Mono& m, int letter) const
  {
    int pos = 0;
    while (pos < static_cast<int>(m.size()) && m[pos] < letter) ++pos;
    if (deg[letter] % 2 != 0) {
      if ((pos < static_cast<int>(m.size()) && m[pos] == letter) ||
          (pos > 0 && m[pos - 1] == letter))
        return {0, {}};
    }
    long crossed = 0;
    for (int t = 0; t < pos; ++t) crossed += deg[m[t]];
    int sign = ((crossed * deg[letter]) % 2 == 0) ? 1 : -1;
    Mono out = m;
    out.insert(out.begin() + pos, letter);
    return {sign, out};
  }

  /// Written-order product of monomials.
  std::pair<int, Mono> mul(const Mono& a, const Mono& b) const
  {
    int sign = 1;
    Mono out = a;
    for (int id : b) {
      auto [s, m] = insert(out, id);
      if (s == 0) return {0, {}};
      sign *= s;
      out = std::move(m);
    }
    return {sign, out};
  }

  /// Koszul sign of pulling the positions in `subset` (sorted) to the front.
  int front_sign(const Mono& m, const std::vector<int>& subset) const
  {
    std::vector<int> degs(m.size());
    for (size_t i = 0; i < m.size(); ++i) degs[i] = deg[m[i]];
    return front_unshuffle_sign(subset, static_cast<int>(m.size()), degs);
  }

  Mono select(const Mono& m, const std::vector<int>& subset) const
  {
    Mono out;
    for (int p : subset) out.push_back(m[p]);
    return out;
  }

  Mono reject(const Mono& m, const std::vector<int>& subset) const
  {
    std::vector<char> in_s(m.size(), 0);
    for (int p : subset) in_s[p] = 1;
    Mono out;
    for (size_t p = 0; p < m.size(); ++p)
      if (!in_s[p]) out.push_back(m[p]);
    return out;
  }

  std::vector<Mono> monomials(int weight) const { return sym_monomials(deg, weight); }

  std::string mono_name(const Mono& m, const std::vector<std::string>& names) const
  {
    if (m.empty()) return "1";
    std::string s;
    for (int id : m) {
      if (!s.empty()) s += ".";
      s += names[id];
    }
    return s;
  }
};

inline void symvec_add(SymVec& into, const SymVec& v, const Scalar& c)
{
  if (is_zero(c)) return;
  for (const auto& [m, x] : v) {
    auto it = into.find(m);
    if (it == into.end()) {
      Scalar w = x * c;
      if (!is_zero(w)) into.emplace(m, std::move(w));
    } else {
      it->second += x * c;
      if (is_zero(it->second)) into.erase(it);
    }
  }
}

/// Multiply a letter vector into a SymVec (left multiplication by sum of
/// letters).
inline SymVec symvec_mul_letter(const SymSpace& s, const Vec& letters, const SymVec& v)
{
  SymVec out;
  for (const auto& [id, c] : letters)
    for (const auto& [m, x] : v) {
      auto [sg, mm] = s.insert(m, id);
      if (sg == 0) continue;
      SymVec t;
      t.emplace(mm, Scalar(sg));
      symvec_add(out, t, c * x);
    }
  return out;
}

/// All subsets of positions {0..n-1} of the given size, sorted.
inline std::vector<std::vector<int>> position_subsets(int n, int size)
{
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int p = start; p < n; ++p) {
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Coderivation determined by a corestriction: blocks of size 1..max_block
/// are collapsed through `f`, whose output is a letter vector. Output is a
/// SymVec over the same alphabet.
///   D(w_1...w_n) = sum_{S} eps(S) f(w_S) . w_rest
inline SymVec coderivation_apply(const SymSpace& s,
                                 const std::function<Vec(const Mono&)>& f, const Mono& m,
                                 int max_block)
{
  SymVec out;
  const int n = static_cast<int>(m.size());
  for (int k = 1; k <= std::min(n, max_block); ++k)
    for (const auto& sub : position_subsets(n, k)) {
      int eps = s.front_sign(m, sub);
      Vec img = f(s.select(m, sub));
      if (img.empty()) continue;
      Mono rest = s.reject(m, sub);
      SymVec restv;
      restv.emplace(rest, Scalar(1));
      SymVec term = symvec_mul_letter(s, img, restv);
      symvec_add(out, term, Scalar(eps));
    }
  return out;
}

/// Unordered set partitions of {0..n-1} with every block nonempty, each
/// counted once with blocks ordered by minimal element.
inline void partitions_rec(int n, std::vector<char>& used, std::vector<std::vector<int>>& cur,
                           const std::function<void(const std::vector<std::vector<int>>&)>& emit)
{
  int first = -1;
  for (int p = 0; p < n; ++p)
    if (!used[p]) {
      first = p;
      break;
    }
  if (first < 0) {
    emit(cur);
    return;
  }
  // enumerate blocks containing `first` from the unused positions
  std::vector<int> rest;
  for (int p = first + 1; p < n; ++p)
    if (!used[p]) rest.push_back(p);
  int r = static_cast<int>(rest.size());
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> block{first};
    for (int t = 0; t < r; ++t)
      if (mask & (1 << t)) block.push_back(rest[t]);
    for (int p : block) used[p] = 1;
    cur.push_back(block);
    partitions_rec(n, used, cur, emit);
    cur.pop_back();
    for (int p : block) used[p] = 0;
  }
}

/// Coalgebra map into Sym(target) determined by a degree-0 block map whose
/// output is a SymVec over the target alphabet concentrated in weight 1
/// (i.e. a letter vector): F(w_1...w_n) = sum over unordered partitions of
/// eps(partition) prod_i f(block_i). Blocks larger than max_block give zero.
inline SymVec coalgebra_map_apply(const SymSpace& src, const SymSpace& tgt,
                                  const std::function<Vec(const Mono&)>& f, const Mono& m,
                                  int max_block)
{
  SymVec out;
  const int n = static_cast<int>(m.size());
  if (n == 0) return out;
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> cur;
  partitions_rec(n, used, cur, [&](const std::vector<std::vector<int>>& blocks) {
    // skip partitions with oversized blocks
    for (const auto& b : blocks)
      if (static_cast<int>(b.size()) > max_block) return;
    // iterated front-unshuffle sign: pull block_1 to the front, then block_2
    // from the remainder, ...
    int eps = 1;
    {
      Mono work = m;
      std::vector<int> positions(n);
      for (int p = 0; p < n; ++p) positions[p] = p;
      for (const auto& b : blocks) {
        // positions of b inside `work`
        std::vector<int> local;
        for (int p : b) {
          for (size_t t = 0; t < positions.size(); ++t)
            if (positions[t] == p) local.push_back(static_cast<int>(t));
        }
        std::sort(local.begin(), local.end());
        eps *= src.front_sign(work, local);
        // remove the block from work/positions
        Mono nw;
        std::vector<int> np;
        std::vector<char> in_b(positions.size(), 0);
        for (int t : local) in_b[t] = 1;
        for (size_t t = 0; t < positions.size(); ++t)
          if (!in_b[t]) {
            nw.push_back(work[t]);
            np.push_back(positions[t]);
          }
        work = std::move(nw);
        positions = std::move(np);
      }
    }
    // product of the block images
    SymVec prod;
    prod.emplace(Mono{}, Scalar(1));
    for (const auto& b : blocks) {
      Vec img = f(src.select(m, b));
      if (img.empty()) {
        prod.clear();
        break;
      }
      prod = symvec_mul_letter(tgt, img, prod);
      if (prod.empty()) break;
    }
    symvec_add(out, prod, Scalar(eps));
  });
  return out;
}

//------------------------------------------------------------------------------
// Bar complex of an algebroid: Sym^{>= 1}(g[1]) with the coderivation built
// from the suspended brackets
//------------------------------------------------------------------------------

inline SymSpace bar_space(const Algebroid& g)
{
  SymSpace s;
  s.deg.resize(g.dim());
  for (int id = 0; id < g.dim(); ++id) s.deg[id] = g.deg_of(id) + 1;
  return s;
}

/// Suspended bracket: ltilde_k(s X_1, ..., s X_k) =
///   (-1)^{sum_i (k-i) |s X_i|} s [X_1, ..., X_k];  all ltilde_k have degree -1.
inline Vec ltilde(const Algebroid& g, const SymSpace& s, const Mono& m)
{
  const int k = static_cast<int>(m.size());
  long expo = 0;
  for (int i = 0; i < k; ++i) expo += long(k - 1 - i) * s.deg[m[i]];
  Vec br = g.bracket_ids(m);  // same sorted ids
  if (br.empty()) return br;
  Vec out;
  vec_add(out, br, Scalar(expo % 2 == 0 ? 1 : -1));
  return out;
}

/// The bar differential D on Sym^{>= 1}(g[1]).
inline SymVec bar_diff(const Algebroid& g, const SymSpace& s, const Mono& m)
{
  return coderivation_apply(
      s, [&](const Mono& block) { return ltilde(g, s, block); }, m, g.arity_cap);
}

} // namespace algd

#endif
