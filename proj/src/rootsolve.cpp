#include "h2sn/rootsolve.hpp"

#include <mpfr.h>

#include <algorithm>

namespace h2sn {

std::vector<RootInterval> isolate_real_roots(const UPoly& p_in) {
  UPoly p = p_in;
  trim(p);
  if (p.empty()) throw UsageError("cannot isolate roots of the zero polynomial");
  std::vector<RootInterval> out;
  if (degree(p) == 0) return out;
  UPoly q = squarefree_part(p);
  auto seq = sturm_sequence(q);
  Rational B = cauchy_bound(q);
  struct Job {
    Rational lo, hi;
    int count;
  };
  std::vector<Job> stack;
  int total = sign_changes_at(seq, -B) - sign_changes_at(seq, B);
  if (total > 0) stack.push_back({-B, B, total});
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.count == 1) {
      out.push_back({j.lo, j.hi, q});
      continue;
    }
    // split at a point that is not a root
    Rational m = (j.lo + j.hi) / 2;
    for (int k = 3; sign_at(q, m) == 0; ++k) m = j.lo + (j.hi - j.lo) * Rational(k - 1, 2 * k - 1);
    int left = count_roots(seq, j.lo, m);
    int right = j.count - left;
    if (left) stack.push_back({j.lo, m, left});
    if (right) stack.push_back({m, j.hi, right});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<RootInterval> isolate_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw UsageError("cannot isolate roots of the zero polynomial");
  auto sup = p.support();
  if (sup.size() > 1) throw UsageError("polynomial is not univariate: " + p.to_string());
  if (sup.empty()) return {};
  return isolate_real_roots(upoly_from(p, sup[0]));
}

BigFloat refine_root(const RootInterval& iv, const BigFloat& tol) {
  const UPoly& p = iv.poly;
  if (sign_at(p, iv.hi) == 0) return to_bigfloat(iv.hi);
  UPoly dp = derivative(p);
  BigFloat a = to_bigfloat(iv.lo), b = to_bigfloat(iv.hi);
  int sa = sign_at(p, iv.lo);
  BigFloat x = (a + b) / 2;
  for (int it = 0; it < 4000; ++it) {
    if (b - a < tol) break;
    BigFloat fx = eval(p, x);
    if (fx == 0) return x;
    int sx = fx > 0 ? 1 : -1;
    if (sx == sa) a = x;
    else b = x;
    BigFloat d = eval(dp, x);
    BigFloat next;
    bool newton_ok = false;
    if (d != 0) {
      next = x - fx / d;
      newton_ok = next > a && next < b;
    }
    if (newton_ok) {
      BigFloat step = abs(next - x);
      x = next;
      if (step < tol / 4) {
        // confirm the bracket around x
        BigFloat lo = x - tol / 2, hi = x + tol / 2;
        BigFloat flo = eval(p, lo), fhi = eval(p, hi);
        if ((flo > 0) != (fhi > 0) || flo == 0 || fhi == 0) return x;
      }
    } else {
      x = (a + b) / 2;
    }
  }
  return x;
}

BigFloat max_residual(const PolySystem& sys, const std::map<std::string, BigFloat>& point) {
  BigFloat m = 0;
  for (auto& g : sys) {
    if (g.is_zero()) continue;
    BigFloat v = abs(evaluate(g, point));
    if (v > m) m = v;
  }
  return m;
}

std::vector<RealSolution> dedup_solutions(std::vector<RealSolution> sols, const BigFloat& tol) {
  auto key_less = [](const RealSolution& a, const RealSolution& b) {
    for (auto& [k, v] : a.values) {
      auto it = b.values.find(k);
      if (it == b.values.end()) return false;
      if (v < it->second) return true;
      if (v > it->second) return false;
    }
    return false;
  };
  std::sort(sols.begin(), sols.end(), key_less);
  std::vector<RealSolution> out;
  for (auto& s : sols) {
    bool dup = false;
    for (auto& o : out) {
      BigFloat d = 0;
      for (auto& [k, v] : s.values) {
        auto it = o.values.find(k);
        if (it == o.values.end()) continue;
        BigFloat e = abs(v - it->second);
        if (e > d) d = e;
      }
      if (d < tol) {
        dup = true;
        if (o.provenance.find(s.provenance) == std::string::npos) o.provenance += "," + s.provenance;
        break;
      }
    }
    if (!dup) out.push_back(s);
  }
  return out;
}

namespace {

struct BackSubst {
  const TriangularSet& set;
  const PolySystem& original;
  const SolveOptions& opt;
  std::string tag;
  SolveReport& report;
  BigFloat refine_tol;

  void run(size_t level, std::map<std::string, BigFloat>& values) {
    const Ring& R = *set.ring;
    if (level == set.chain.size()) {
      RealSolution s;
      s.values = values;
      s.residual = max_residual(original, values);
      s.provenance = tag;
      if (s.residual < opt.tol) report.solutions.push_back(s);
      else report.rejected.push_back(tag + " residual " + to_string(s.residual, 6));
      return;
    }
    const Polynomial& t = set.chain[level];
    int var = set.solve_order[level];
    auto coeffs = t.coefficients_in(var);
    std::vector<BigFloat> c;
    BigFloat scale = 0;
    for (auto& cp : coeffs) {
      c.push_back(evaluate(cp, values));
      if (abs(c.back()) > scale) scale = abs(c.back());
    }
    BigFloat eps = pow(BigFloat(2), -(opt.precision_bits / 2));
    if (abs(c.back()) <= eps * scale) {
      report.degenerate.push_back(tag + ": leading coefficient vanishes at level " + std::to_string(level) + " (" +
                                  R.vars()[var] + ")");
      return;
    }
    UPoly u;
    for (auto& x : c) u.push_back(exact_rational(x));
    trim(u);
    auto roots = isolate_real_roots(u);
    if (roots.empty()) {
      ++report.complex_branches;
      return;
    }
    for (auto& iv : roots) {
      values[R.vars()[var]] = refine_root(iv, refine_tol);
      run(level + 1, values);
    }
    values.erase(R.vars()[var]);
  }
};

}  // namespace

SolveReport solve_triangular_system(const TriangularDecomposition& T, const PolySystem& original,
                                    const SolveOptions& opt) {
  PrecisionScope scope(opt.precision_bits);
  SolveReport report;
  BigFloat refine_tol = pow(BigFloat(2), -(opt.precision_bits - 24));
  for (size_t i = 0; i < T.sets.size(); ++i) {
    std::map<std::string, BigFloat> values;
    BackSubst bs{T.sets[i], original, opt, "tri[" + std::to_string(i + 1) + "]", report, refine_tol};
    bs.run(0, values);
  }
  report.solutions = dedup_solutions(std::move(report.solutions), opt.tol);
  return report;
}

}  // namespace h2sn
