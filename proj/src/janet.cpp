#include "thomas/janet.hpp"

#include <algorithm>

namespace thomas {

namespace {

bool mono_less(const MultiIndex& a, const MultiIndex& b) {
  int c = degrevlex_cmp(a, b);
  if (c != 0) return c < 0;
  return a < b;
}

bool divides(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

}  // namespace

std::size_t JanetAssignment::find(const MultiIndex& m) const {
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (monos[i] == m) return i;
  throw std::invalid_argument("monomial not in Janet set");
}

JanetAssignment janet_assign(std::vector<MultiIndex> M) {
  if (M.empty()) throw EmptySet();
  std::sort(M.begin(), M.end(), mono_less);
  M.erase(std::unique(M.begin(), M.end()), M.end());
  std::size_t n = M.front().size();
  JanetAssignment a;
  a.monos = std::move(M);
  a.admissible.assign(a.monos.size(), std::vector<bool>(n, false));
  for (std::size_t i = 0; i < a.monos.size(); ++i) {
    const MultiIndex& t = a.monos[i];
    for (std::size_t k = 0; k < n; ++k) {
      // d_k admissible iff t[k] attains the maximum over members agreeing
      // with t in the first k coordinates
      std::uint32_t mx = 0;
      for (const MultiIndex& s : a.monos) {
        bool agree = true;
        for (std::size_t j = 0; j < k; ++j)
          if (s[j] != t[j]) {
            agree = false;
            break;
          }
        if (agree) mx = std::max(mx, s[k]);
      }
      a.admissible[i][k] = (t[k] == mx);
    }
  }
  return a;
}

std::optional<std::size_t> cone_owner(const JanetAssignment& a, const MultiIndex& m) {
  for (std::size_t i = 0; i < a.monos.size(); ++i) {
    const MultiIndex& t = a.monos[i];
    if (!divides(t, m)) continue;
    bool ok = true;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j] > t[j] && !a.admissible[i][j]) {
        ok = false;
        break;
      }
    if (ok) return i;
  }
  return std::nullopt;
}

bool is_janet_complete(const std::vector<MultiIndex>& M) {
  JanetAssignment a = janet_assign(M);
  for (std::size_t i = 0; i < a.monos.size(); ++i) {
    for (std::size_t j = 0; j < a.monos[i].size(); ++j) {
      if (a.admissible[i][j]) continue;
      MultiIndex m = a.monos[i];
      m[j] += 1;
      if (!cone_owner(a, m)) return false;
    }
  }
  return true;
}

CompletionResult janet_complete(std::vector<MultiIndex> M) {
  CompletionResult out;
  if (M.empty()) throw EmptySet();
  JanetAssignment a = janet_assign(std::move(M));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < a.monos.size() && !changed; ++i) {
      for (std::size_t j = 0; j < a.monos[i].size() && !changed; ++j) {
        if (a.admissible[i][j]) continue;
        MultiIndex m = a.monos[i];
        m[j] += 1;
        if (cone_owner(a, m)) continue;
        out.steps.push_back(CompletionStep{m, a.monos[i], static_cast<std::uint32_t>(j)});
        std::vector<MultiIndex> next = a.monos;
        next.push_back(std::move(m));
        a = janet_assign(std::move(next));
        changed = true;
      }
    }
  }
  out.monos = a.monos;
  return out;
}

}  // namespace thomas
