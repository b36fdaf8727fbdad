#include <functional>

#include "ccx/bounds.hpp"
#include "ccx/classical.hpp"
#include "ccx/errors.hpp"

namespace ccx {

namespace {

struct View {
  int a = 0;  // weights after complementing
  int b = 0;
  int lo = 0;
  int hi = 0;
  std::function<Value(int)> at;  // slice value at the complemented intersection
};

View complemented_view(const PIFunctionTable& f, int a, int b, bool cx, bool cy) {
  const int n = f.n();
  View v;
  v.a = cx ? n - a : a;
  v.b = cy ? n - b : b;
  v.lo = domain_lo(n, v.a, v.b);
  v.hi = domain_hi(v.a, v.b);
  v.at = [&f, n, a, b, cx, cy](int k) {
    int orig = k;
    if (cx && cy) orig = k - n + a + b;
    else if (cx) orig = b - k;
    else if (cy) orig = a - k;
    return f.at(a, b, orig);
  };
  return v;
}

bool constant_on(const View& v, int from, int to) {
  for (int k = from + 1; k <= to; ++k)
    if (v.at(k) != v.at(from)) return false;
  return true;
}

bool better(const Embedding& cand, const Embedding& best) { return cand.bound > best.bound; }

}  // namespace

std::string embedding_kind_name(EmbeddingKind k) {
  return k == EmbeddingKind::kDisjointness ? "disjointness" : "equality";
}

BitPair embed_pair(const Embedding& e, const BitString& x, const BitString& y) {
  if (static_cast<int>(x.size()) != e.m || static_cast<int>(y.size()) != e.m || weight(x) != e.w ||
      weight(y) != e.w) {
    throw InputError("embedded inputs must have length m and weight w");
  }
  const int a = e.complement_x ? e.n - e.a : e.a;
  const int b = e.complement_y ? e.n - e.b : e.b;
  const int x_only = a - e.shift - e.w;
  const int y_only = b - e.shift - e.w;
  BitPair out{x, y};
  out.x.insert(out.x.end(), e.shift, 1);
  out.y.insert(out.y.end(), e.shift, 1);
  out.x.insert(out.x.end(), x_only, 1);
  out.y.insert(out.y.end(), x_only, 0);
  out.x.insert(out.x.end(), y_only, 0);
  out.y.insert(out.y.end(), y_only, 1);
  if (static_cast<int>(out.x.size()) != e.n) throw InvariantError("embedding does not fill n positions");
  if (e.complement_x) out.x = complement(out.x);
  if (e.complement_y) out.y = complement(out.y);
  return out;
}

std::optional<bool> verify_embedding(const PIFunctionTable& f, const Embedding& e, std::uint64_t max_entries) {
  const std::uint64_t side = binomial_coefficient(e.m, e.w);
  if (side > 65536 || side * side > max_entries) return std::nullopt;
  std::vector<BitString> strings;
  strings.reserve(side);
  for (std::uint64_t r = 0; r < side; ++r) strings.push_back(combinadic_unrank(r, e.m, e.w));
  for (const BitString& x : strings) {
    for (const BitString& y : strings) {
      const BitPair p = embed_pair(e, x, y);
      if (weight(p.x) != e.a || weight(p.y) != e.b) return false;
      const bool hit = e.kind == EmbeddingKind::kDisjointness ? and_weight(x, y) == 0 : x == y;
      if (to_int(eval_pif(f, p.x, p.y)) != (hit ? e.sign : -e.sign)) return false;
    }
  }
  return true;
}

RankBound logrank_embedding_bound(const PIFunctionTable& f) {
  const int n = f.n();
  if (n > 64) throw InputError("rank embeddings are limited to n <= 64");
  if (!f.is_total()) throw InputError("rank embeddings need a total function");
  RankBound out;
  bool any = false;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      if (!derive_slice(f, a, b).non_trivial()) continue;
      Embedding best;
      bool found = false;
      for (int cx = 0; cx < 2; ++cx) {
        for (int cy = 0; cy < 2; ++cy) {
          const View v = complemented_view(f, a, b, cx, cy);
          Embedding e;
          e.n = n;
          e.a = a;
          e.b = b;
          e.complement_x = cx;
          e.complement_y = cy;
          for (int c = v.lo; c < v.hi; ++c) {
            if (v.at(c) == v.at(c + 1)) continue;
            int w = 1;
            while (c + w + 1 <= v.hi && v.at(c + w + 1) == v.at(c + 1)) ++w;
            e.kind = EmbeddingKind::kDisjointness;
            e.shift = c;
            e.w = w;
            e.m = n - v.a - v.b + c + 2 * w;
            e.sign = to_int(v.at(c));
            e.bound = binomial_coefficient(e.m, e.w) - 1;
            if (!found || better(e, best)) best = e;
            found = true;
            const std::uint64_t single = static_cast<std::uint64_t>(n - v.a - v.b + c + 1);
            if (single > out.single_element_bound) out.single_element_bound = single;
          }
          for (int t = v.lo + 1; t <= v.hi; ++t) {
            if (v.at(t - 1) == v.at(t)) continue;
            int w = 1;
            while (w + 1 <= t) {
              const int lower = std::max(t - (w + 1), v.a + v.b - n);
              if (!constant_on(v, lower, t - 1)) break;
              ++w;
            }
            e.kind = EmbeddingKind::kEquality;
            e.shift = t - w;
            e.w = w;
            e.m = n - v.a - v.b + t + w;
            e.sign = to_int(v.at(t));
            e.bound = binomial_coefficient(e.m, e.w) - 1;
            if (better(e, best)) best = e;
          }
        }
      }
      if (!found) continue;
      out.per_slice.push_back(best);
      if (!any || better(best, out.best)) out.best = best;
      any = true;
    }
  }
  if (!any) throw NoBound("function has no non-constant slice");
  out.best_verified = verify_embedding(f, out.best);
  return out;
}

}  // namespace ccx
