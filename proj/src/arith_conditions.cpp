#include "supercert/arith_conditions.hpp"

#include <algorithm>
#include <functional>

#include "supercert/errors.hpp"

namespace supercert {

std::vector<std::pair<long, long>> goldbach_pairs(long d) {
  std::vector<std::pair<long, long>> out;
  for (long a = 2; 2 * a < d; ++a)
    if (is_small_prime(a) && is_small_prime(d - a)) out.emplace_back(a, d - a);
  return out;
}

std::optional<long> find_prim1_prime(long d) {
  for (long q = d / 2 + 1; q < d; ++q)
    if (q % 3 == 2 && is_small_prime(q)) return q;
  return std::nullopt;
}

bool is_primitive_root(const Int& m, long q) {
  if (q < 2 || !is_small_prime(static_cast<std::uint64_t>(q))) throw UsageError("modulus " + std::to_string(q) + " is not prime");
  const Int a = mod_floor(m, Int(q));
  if (a == 0) throw UsageError(to_string(m) + " is divisible by " + std::to_string(q));
  long rest = q - 1;
  for (long ell = 2; rest > 1; ++ell) {
    if (rest % ell) continue;
    while (rest % ell == 0) rest /= ell;
    if (powmod(a, Int((q - 1) / ell), Int(q)) == 1) return false;
  }
  return true;
}

namespace {

constexpr const char* kSmallSource = "Masley-Montgomery: class number one exactly for r <= 19";
constexpr const char* kTableSource =
    "relative class numbers h^- from Washington, Introduction to Cyclotomic Fields, table of h^-; "
    "h^+ = 1 for r <= 151 (Miller 2015)";

struct ClassEntry {
  unsigned r;
  const char* value;
};

constexpr ClassEntry kClassTable[] = {
    {23, "3"},           {29, "8"},          {31, "9"},           {37, "37"},
    {41, "121"},         {43, "211"},        {47, "695"},         {53, "4889"},
    {59, "41241"},       {61, "76301"},      {67, "853513"},      {71, "3882809"},
    {73, "11957417"},    {79, "100146415"},  {83, "838216959"},   {89, "13379363737"},
    {97, "411322824001"},
};

}  // namespace

ClassNumber class_number(unsigned r) {
  if (r < 3 || !is_small_prime(r)) throw UsageError("r = " + std::to_string(r) + " is not an odd prime");
  if (r <= 19) return {r, Int(1), kSmallSource};
  for (const auto& e : kClassTable)
    if (e.r == r) return {r, Int(e.value), kTableSource};
  throw UnsupportedError("no class number on record for r = " + std::to_string(r));
}

bool class_number_odd(unsigned r) { return class_number(r).odd(); }

bool prim1_applies(unsigned r) { return (r >= 3 && r <= 23 && is_small_prime(r)) || r == 31; }

std::string to_string(RouteKind kind) {
  switch (kind) {
    case RouteKind::kA: return "A";
    case RouteKind::kBPrimI: return "B-PrimI";
    case RouteKind::kBPrimII: return "B-PrimII";
  }
  return "?";
}

std::set<Int> HypothesisRoute::excluded_primes() const {
  std::set<Int> out{Int(r)};
  for (long v : {q1, q2, q3, q, prim_q1, prim_q2})
    if (v) out.insert(Int(v));
  if (q_r) out.insert(Int(*q_r));
  for (const auto* pl : {&p1, &p2, &p, &p_r, &prim_p1, &p3, &p4})
    if (*pl) out.insert((*pl)->p);
  return out;
}

const RouteFailure* RouteResult::headline() const {
  if (route || failures.empty()) return nullptr;
  const RouteFailure* best = &failures.front();
  for (const auto& f : failures)
    if (f.depth > best->depth) best = &f;
  return best;
}

namespace {

bool has_degree(const Witness& w, const std::vector<long>& qs) {
  if (w.profile.kind != ProfileKind::kStandard || w.profile.qs != qs) return false;
  // shortened form: heights drop by one down to 1
  for (std::size_t s = 0; s < qs.size(); ++s)
    if (w.profile.hs[s] != static_cast<long>(qs.size() - s)) return false;
  return true;
}

bool prim_root_all(const Witness& w, std::initializer_list<long> qs) {
  const Int k = w.place.residue_size();
  for (long q : qs)
    if (divisible(k, Int(q)) || !is_primitive_root(k, q)) return false;
  return true;
}

bool disjoint(const std::set<Int>& a, const std::set<Int>& b) {
  return std::none_of(a.begin(), a.end(), [&](const Int& x) { return b.count(x) > 0; });
}

/// Tracks how far an attempt got and the first reason it stopped.
struct Attempt {
  RouteFailure fail;
  void note(int depth, const std::string& hyp, const std::string& why) {
    if (depth > fail.depth || fail.hypothesis.empty()) fail = {fail.route, hyp, why, depth};
  }
};

using Consumer = std::function<bool(HypothesisRoute&)>;

/// Degree-2 and transvection witnesses outside S_irr and S_prim.
bool attach_auxiliary(HypothesisRoute& route, const std::vector<Witness>& ws, Attempt& at, int depth) {
  std::set<Int> used = route.s_irr;
  used.insert(route.s_prim.begin(), route.s_prim.end());
  bool any3 = false;
  for (const auto& w3 : ws) {
    if (!has_degree(w3, {2}) || used.count(w3.place.p)) continue;
    any3 = true;
    for (const auto& w4 : ws) {
      if (w4.profile.kind != ProfileKind::kTransvection || w4.profile.hs != std::vector<long>{1}) continue;
      if (used.count(w4.place.p) || w4.place.p == w3.place.p) continue;
      route.p3 = w3.place;
      route.p4 = w4.place;
      return true;
    }
  }
  if (!any3)
    at.note(depth, "p3", "no place of degree 2 outside S_irr and S_prim");
  else
    at.note(depth + 1, "p4", "no transvection place of degree r (height 1) distinct from p3 and outside S_irr, S_prim");
  return false;
}

/// Enumerates primitivity data of the first kind compatible with `base`; calls `next` on each.
bool each_prim1(unsigned r, long d, const std::vector<Witness>& ws, HypothesisRoute base, Attempt& at, int depth,
                const std::function<bool(const std::set<Int>&)>& compatible, const Consumer& next) {
  if (!prim1_applies(r)) {
    at.note(depth, "Prim I", "r = " + std::to_string(r) + " is neither in [3, 23] nor 31");
    return false;
  }
  base.grh_assumed = (r == 31);
  if (r != 23 && r != 31) {
    base.s_prim.clear();
    if (!compatible(base.s_prim)) {
      at.note(depth, "Prim I", "intersection constraint fails");
      return false;
    }
    return next(base);
  }
  bool any = false;
  for (long qr = d / 2 + 1; qr < d; ++qr) {
    if (qr % 3 != 2 || !is_small_prime(qr)) continue;
    for (const auto& w : ws) {
      if (!has_degree(w, {qr}) || !prim_root_all(w, {qr})) continue;
      any = true;
      HypothesisRoute cand = base;
      cand.q_r = qr;
      cand.p_r = w.place;
      cand.s_prim = {Int(qr), w.place.p};
      if (!compatible(cand.s_prim)) continue;
      if (next(cand)) return true;
    }
  }
  if (!any)
    at.note(depth, "Prim I",
            "no prime d/2 < q_r < d, q_r = 2 mod 3, with a place of that degree whose residue size is a primitive root");
  else
    at.note(depth, "Prim I", "no q_r witness satisfies the intersection constraint");
  return false;
}

std::optional<HypothesisRoute> try_b(unsigned r, long d, const std::vector<Witness>& ws, bool prim_one,
                                     Attempt& at) {
  const long q = d - 1;
  if (!is_small_prime(q)) {
    at.note(0, "Irred II", "d - 1 = " + std::to_string(q) + " is not prime");
    return std::nullopt;
  }
  std::optional<HypothesisRoute> found;
  bool any_irred = false;
  for (const auto& w : ws) {
    if (!has_degree(w, {q}) || !prim_root_all(w, {q})) continue;
    any_irred = true;
    HypothesisRoute base;
    base.r = r;
    base.d = d;
    base.q = q;
    base.p = w.place;
    base.s_irr = {Int(q), w.place.p};
    if (prim_one) {
      base.kind = RouteKind::kBPrimI;
      auto compatible = [&](const std::set<Int>& sp) {
        if (disjoint(base.s_irr, sp)) return true;
        return sp.count(Int(q)) && sp.count(w.place.p) && sp.size() == 2 && base.s_irr.size() == 2;
      };
      each_prim1(r, d, ws, base, at, 1, compatible, [&](HypothesisRoute& cand) {
        if (!attach_auxiliary(cand, ws, at, 2)) return false;
        found = cand;
        return true;
      });
    } else {
      base.kind = RouteKind::kBPrimII;
      ClassNumber h;
      try {
        h = class_number(r);
      } catch (const UnsupportedError& e) {
        at.note(1, "Prim II", e.what());
        return std::nullopt;
      }
      if (!h.odd()) {
        at.note(1, "Prim II", "class number " + to_string(h.value) + " is even");
        return std::nullopt;
      }
      bool any_pair = false;
      for (auto [a, b] : goldbach_pairs(d)) {
        for (const auto& w1 : ws) {
          if (!has_degree(w1, {a, b}) || !prim_root_all(w1, {a, b})) continue;
          any_pair = true;
          HypothesisRoute cand = base;
          cand.prim_q1 = a;
          cand.prim_q2 = b;
          cand.prim_p1 = w1.place;
          cand.s_prim = {Int(a), Int(b), w1.place.p};
          if (!disjoint(cand.s_irr, cand.s_prim)) {
            at.note(1, "Prim II", "S_irr and S_prim intersect");
            continue;
          }
          if (attach_auxiliary(cand, ws, at, 2)) {
            found = cand;
            break;
          }
        }
        if (found) break;
      }
      if (!any_pair && !found)
        at.note(1, "Prim II", "no Goldbach pair q1 + q2 = d with a place of degree (q1, q2) and primitive residue size");
    }
    if (found) return found;
  }
  if (!any_irred)
    at.note(0, "Irred II", "no place of degree " + std::to_string(q) + " whose residue size is a primitive root mod " +
                               std::to_string(q));
  return std::nullopt;
}

std::optional<HypothesisRoute> try_a(unsigned r, long d, const std::vector<Witness>& ws, Attempt& at) {
  std::optional<HypothesisRoute> found;
  bool any_irred = false;
  for (auto [a, b] : goldbach_pairs(d)) {
    for (long c = b + 1; c < d; ++c) {
      if (!is_small_prime(c)) continue;
      for (const auto& w1 : ws) {
        if (!has_degree(w1, {a, b}) || !prim_root_all(w1, {a, b})) continue;
        for (const auto& w2 : ws) {
          if (!has_degree(w2, {c}) || !prim_root_all(w2, {c})) continue;
          std::set<Int> s_irr{Int(a), Int(b), Int(c), w1.place.p, w2.place.p};
          if (s_irr.size() != 5) {
            at.note(0, "Irred I", "S_irr does not have five elements");
            continue;
          }
          any_irred = true;
          HypothesisRoute base;
          base.kind = RouteKind::kA;
          base.r = r;
          base.d = d;
          base.q1 = a;
          base.q2 = b;
          base.q3 = c;
          base.p1 = w1.place;
          base.p2 = w2.place;
          base.s_irr = s_irr;
          auto compatible = [&](const std::set<Int>& sp) {
            std::set<Int> meet;
            for (const auto& x : sp)
              if (s_irr.count(x)) meet.insert(x);
            if (meet.empty()) return true;
            // q_r and p_r are the only elements of S_prim
            return meet.size() <= 2 && sp.count(Int(c)) && sp.count(w2.place.p);
          };
          each_prim1(r, d, ws, base, at, 1, compatible, [&](HypothesisRoute& cand) {
            if (cand.q_r && (cand.s_irr.count(Int(*cand.q_r)) || cand.s_irr.count(cand.p_r->p)) &&
                (*cand.q_r != c || cand.p_r->p != w2.place.p))
              return false;
            if (!attach_auxiliary(cand, ws, at, 2)) return false;
            found = cand;
            return true;
          });
          if (found) return found;
        }
      }
    }
  }
  if (!any_irred)
    at.note(0, "Irred I", "no primes q1 + q2 = d < q3 < d with witnesses of degree (q1, q2) and q3");
  return std::nullopt;
}

}  // namespace

RouteResult build_route(unsigned r, long d, std::vector<Witness> witnesses) {
  RouteResult out;
  if (d < 12) {
    out.failures.push_back({"setting", "degree", "d = " + std::to_string(d) + " is below 12", 0});
    return out;
  }
  if (d % (2 * static_cast<long>(r)) != 0) {
    out.failures.push_back({"setting", "degree", "2r does not divide d", 0});
    return out;
  }
  std::stable_sort(witnesses.begin(), witnesses.end(), [](const Witness& a, const Witness& b) {
    if (a.place.p != b.place.p) return a.place.p < b.place.p;
    return a.place.index < b.place.index;
  });

  const std::pair<RouteKind, std::function<std::optional<HypothesisRoute>(Attempt&)>> order[] = {
      {RouteKind::kBPrimI, [&](Attempt& at) { return try_b(r, d, witnesses, true, at); }},
      {RouteKind::kBPrimII, [&](Attempt& at) { return try_b(r, d, witnesses, false, at); }},
      {RouteKind::kA, [&](Attempt& at) { return try_a(r, d, witnesses, at); }},
  };
  for (const auto& [kind, attempt] : order) {
    Attempt at;
    at.fail.route = to_string(kind);
    if (auto route = attempt(at)) {
      out.route = std::move(route);
      return out;
    }
    if (at.fail.hypothesis.empty()) at.fail.hypothesis = "(" + to_string(kind) + ")";
    out.failures.push_back(at.fail);
  }
  return out;
}

}  // namespace supercert
