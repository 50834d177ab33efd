#include "h2sn/stickelberger.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace h2sn {

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (n != o.n) throw UsageError("matrix size mismatch");
  RationalMatrix r(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      const Rational& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (size_t j = 0; j < n; ++j)
        if (sgn(o(k, j)) != 0) r(i, j) += x * o(k, j);
    }
  return r;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

MultiplicationMatrix multiplication_matrix(const GroebnerBasis& G, const std::vector<Monomial>& B,
                                           const std::string& var) {
  const RingPtr& R = G.ring;
  int vi = R->index_of(var);
  if (vi < 0) throw UsageError("unknown variable: " + var);
  std::unordered_map<Monomial, size_t, MonomialHash> pos;
  for (size_t j = 0; j < B.size(); ++j) pos.emplace(B[j], j);
  MultiplicationMatrix mm{var, R, B, RationalMatrix(B.size())};
  Monomial x;
  x.set(vi, 1);
  for (size_t j = 0; j < B.size(); ++j) {
    Polynomial nf = normal_form(Polynomial::monomial(R, B[j] * x, 1), G);
    for (auto& t : nf.terms()) {
      auto it = pos.find(t.m);
      if (it == pos.end()) throw DomainError("normal form leaves the standard-monomial basis");
      mm.M(it->second, j) = t.c;
    }
  }
  return mm;
}

bool matrices_commute(const std::vector<MultiplicationMatrix>& ms) {
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = i + 1; j < ms.size(); ++j)
      if (!(ms[i].M * ms[j].M == ms[j].M * ms[i].M)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// dense real eigenvalues: balancing, elimination to Hessenberg form, Francis double-shift QR
// (1-based indexing inside, following the classical formulation)

namespace {

using Mat = std::vector<std::vector<BigFloat>>;

BigFloat sign_of(const BigFloat& a, const BigFloat& b) { return b >= 0 ? BigFloat(abs(a)) : BigFloat(-abs(a)); }

void balance(Mat& a, int n) {
  const BigFloat radix = 2, sqrdx = 4;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 1; i <= n; ++i) {
      BigFloat r = 0, c = 0;
      for (int j = 1; j <= n; ++j)
        if (j != i) {
          c += abs(a[j][i]);
          r += abs(a[i][j]);
        }
      if (c != 0 && r != 0) {
        BigFloat g = r / radix, f = 1, s = c + r;
        while (c < g) {
          f *= radix;
          c *= sqrdx;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= sqrdx;
        }
        if ((c + r) / f < BigFloat("0.95") * s) {
          done = false;
          g = 1 / f;
          for (int j = 1; j <= n; ++j) a[i][j] *= g;
          for (int j = 1; j <= n; ++j) a[j][i] *= f;
        }
      }
    }
  }
}

void hessenberg(Mat& a, int n) {
  for (int m = 2; m < n; ++m) {
    BigFloat x = 0;
    int i = m;
    for (int j = m; j <= n; ++j)
      if (abs(a[j][m - 1]) > abs(x)) {
        x = a[j][m - 1];
        i = j;
      }
    if (i != m) {
      for (int j = m - 1; j <= n; ++j) std::swap(a[i][j], a[m][j]);
      for (int j = 1; j <= n; ++j) std::swap(a[j][i], a[j][m]);
    }
    if (x != 0) {
      for (i = m + 1; i <= n; ++i) {
        BigFloat y = a[i][m - 1];
        if (y != 0) {
          y /= x;
          a[i][m - 1] = y;
          for (int j = m; j <= n; ++j) a[i][j] -= y * a[m][j];
          for (int j = 1; j <= n; ++j) a[j][m] += y * a[j][i];
        }
      }
    }
  }
  for (int i = 3; i <= n; ++i)
    for (int j = 1; j < i - 1; ++j) a[i][j] = 0;
}

void hqr(Mat& a, int n, std::vector<BigFloat>& wr, std::vector<BigFloat>& wi) {
  const BigFloat eps = pow(BigFloat(2), -(current_precision_bits() - 4));
  BigFloat anorm = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += abs(a[i][j]);
  int nn = n, l = 1;
  BigFloat t = 0, p, q, r, s, w, x, y, z;
  while (nn >= 1) {
    int its = 0;
    do {
      for (l = nn; l >= 2; --l) {
        s = abs(a[l - 1][l - 1]) + abs(a[l][l]);
        if (s == 0) s = anorm;
        if (abs(a[l][l - 1]) <= eps * s) {
          a[l][l - 1] = 0;
          break;
        }
      }
      x = a[nn][nn];
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn--] = 0;
      } else {
        y = a[nn - 1][nn - 1];
        w = a[nn][nn - 1] * a[nn - 1][nn];
        if (l == nn - 1) {
          p = (y - x) / 2;
          q = p * p + w;
          z = sqrt(abs(q));
          x += t;
          if (q >= 0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          nn -= 2;
        } else {
          if (its == 200) throw DomainError("eigenvalue iteration did not converge");
          if (its > 0 && its % 10 == 0) {  // exceptional shift
            t += x;
            for (int i = 1; i <= nn; ++i) a[i][i] -= x;
            s = abs(a[nn][nn - 1]) + abs(a[nn - 1][nn - 2]);
            y = x = BigFloat("0.75") * s;
            w = BigFloat("-0.4375") * s * s;
          }
          ++its;
          int m;
          for (m = nn - 2; m >= l; --m) {
            z = a[m][m];
            r = x - z;
            s = y - z;
            p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - r - s;
            r = a[m + 2][m + 1];
            s = abs(p) + abs(q) + abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            BigFloat u = abs(a[m][m - 1]) * (abs(q) + abs(r));
            BigFloat v = abs(p) * (abs(a[m - 1][m - 1]) + abs(z) + abs(a[m + 1][m + 1]));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a[i][i - 2] = 0;
            if (i != m + 2) a[i][i - 3] = 0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a[k][k - 1];
              q = a[k + 1][k - 1];
              r = 0;
              if (k != nn - 1) r = a[k + 2][k - 1];
              x = abs(p) + abs(q) + abs(r);
              if (x != 0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = sign_of(sqrt(p * p + q * q + r * r), p);
            if (s != 0) {
              if (k == m) {
                if (l != m) a[k][k - 1] = -a[k][k - 1];
              } else {
                a[k][k - 1] = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a[k][j] + q * a[k + 1][j];
                if (k != nn - 1) {
                  p += r * a[k + 2][j];
                  a[k + 2][j] -= p * z;
                }
                a[k + 1][j] -= p * y;
                a[k][j] -= p * x;
              }
              int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a[i][k] + y * a[i][k + 1];
                if (k != nn - 1) {
                  p += z * a[i][k + 2];
                  a[i][k + 2] -= p * r;
                }
                a[i][k + 1] -= p * q;
                a[i][k] -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }
}

struct Cx {
  BigFloat re, im;
};
Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  BigFloat d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
BigFloat norm2(const Cx& a) { return a.re * a.re + a.im * a.im; }
Cx conj(const Cx& a) { return {a.re, -a.im}; }

using CVec = std::vector<Cx>;

// solve (A - lambda I) x = b by Gaussian elimination with partial pivoting
CVec shifted_solve(const Mat& A, const Cx& lambda, CVec b, const BigFloat& tiny) {
  const size_t n = b.size();
  std::vector<CVec> m(n, CVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = {A[i][j], BigFloat(0)};
  for (size_t i = 0; i < n; ++i) m[i][i] = m[i][i] - lambda;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (norm2(m[r][c]) > norm2(m[piv][c])) piv = r;
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    if (norm2(m[c][c]) < tiny * tiny) m[c][c] = {tiny, BigFloat(0)};
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c].re == 0 && m[r][c].im == 0) continue;
      Cx f = m[r][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[r][j] = m[r][j] - f * m[c][j];
      b[r] = b[r] - f * b[c];
    }
  }
  CVec x(n);
  for (size_t i = n; i-- > 0;) {
    Cx s = b[i];
    for (size_t j = i + 1; j < n; ++j) s = s - m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

BigFloat vnorm(const CVec& v) {
  BigFloat s = 0;
  for (auto& x : v) s += norm2(x);
  return sqrt(s);
}

Mat to_float_transposed(const RationalMatrix& M) {
  Mat a(M.n, std::vector<BigFloat>(M.n));
  for (size_t i = 0; i < M.n; ++i)
    for (size_t j = 0; j < M.n; ++j) a[j][i] = to_bigfloat(M(i, j));
  return a;
}

CVec mat_vec(const Mat& A, const CVec& v) {
  CVec out(v.size(), Cx{0, 0});
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (A[i][j] != 0) out[i] = out[i] + Cx{A[i][j] * v[j].re, A[i][j] * v[j].im};
  return out;
}

}  // namespace

void real_eigenvalues(std::vector<std::vector<BigFloat>> a0, std::vector<BigFloat>& wr, std::vector<BigFloat>& wi) {
  const int n = static_cast<int>(a0.size());
  Mat a(n + 1, std::vector<BigFloat>(n + 1, BigFloat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i + 1][j + 1] = a0[i][j];
  std::vector<BigFloat> r(n + 1), im(n + 1);
  if (n > 0) {
    balance(a, n);
    hessenberg(a, n);
    hqr(a, n, r, im);
  }
  wr.assign(r.begin() + 1, r.end());
  wi.assign(im.begin() + 1, im.end());
}

std::vector<EigenCandidate> eigen_solve_system(const std::vector<MultiplicationMatrix>& ms, const EigenOptions& opt) {
  if (ms.empty()) throw UsageError("no multiplication matrices");
  const size_t n = ms[0].M.n;
  for (auto& m : ms)
    if (m.M.n != n || m.basis != ms[0].basis) throw UsageError("matrices act on different bases");
  if (!matrices_commute(ms)) throw DomainError("multiplication matrices do not commute");
  PrecisionScope scope(opt.precision_bits + 128);
  // seeded random combination separates distinct points with probability one
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> dist(1, 1000);
  RationalMatrix C(n);
  for (auto& m : ms) {
    Rational c(dist(rng), 997);
    c.canonicalize();
    for (size_t k = 0; k < n * n; ++k) C.a[k] += c * m.M.a[k];
  }
  Mat A = to_float_transposed(C);
  std::vector<Mat> Ts;
  for (auto& m : ms) Ts.push_back(to_float_transposed(m.M));
  std::vector<BigFloat> wr, wi;
  real_eigenvalues(A, wr, wi);

  BigFloat scale = 1;
  for (size_t i = 0; i < n; ++i) {
    BigFloat a = sqrt(wr[i] * wr[i] + wi[i] * wi[i]);
    if (a > scale) scale = a;
  }
  // clusters of nearly equal eigenvalues stand for one (multiple) point
  const BigFloat cluster_tol = pow(BigFloat(2), -(opt.precision_bits / 4)) * scale;
  std::vector<bool> used(n, false);
  std::vector<EigenCandidate> out;
  const BigFloat tiny = pow(BigFloat(2), -(current_precision_bits() - 8)) * scale;
  for (size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    size_t mult = 0;
    Cx lam{0, 0};
    for (size_t j = i; j < n; ++j) {
      if (used[j]) continue;
      BigFloat d = sqrt((wr[j] - wr[i]) * (wr[j] - wr[i]) + (wi[j] - wi[i]) * (wi[j] - wi[i]));
      if (d <= cluster_tol) {
        used[j] = true;
        ++mult;
        lam = lam + Cx{wr[j], wi[j]};
      }
    }
    lam = lam / Cx{BigFloat(mult), BigFloat(0)};
    // inverse iteration for the eigenvector of the combined transposed matrix
    CVec v(n);
    for (size_t k = 0; k < n; ++k) v[k] = {BigFloat(1) + BigFloat(static_cast<long>(k)) / 7, BigFloat(0)};
    // a multiple point is a defective eigenvalue; shifting onto it makes the solve singular at working
    // precision, so stay one cluster width away and iterate longer
    Cx shift = lam;
    if (mult > 1) shift.re += cluster_tol;
    for (int it = 0; it < (mult > 1 ? 12 : 4); ++it) {
      v = shifted_solve(A, shift, v, tiny);
      BigFloat nv = vnorm(v);
      for (auto& x : v) x = Cx{x.re / nv, x.im / nv};
    }
    EigenCandidate cand;
    cand.multiplicity = mult;
    cand.real = true;
    for (size_t k = 0; k < ms.size(); ++k) {
      CVec Mv = mat_vec(Ts[k], v);
      Cx num{0, 0};
      BigFloat den = 0;
      for (size_t q = 0; q < n; ++q) {
        num = num + conj(v[q]) * Mv[q];
        den += norm2(v[q]);
      }
      Cx xi = num / Cx{den, BigFloat(0)};
      CVec r(n);
      for (size_t q = 0; q < n; ++q) r[q] = Mv[q] - xi * v[q];
      cand.re[ms[k].var] = xi.re;
      cand.im[ms[k].var] = xi.im;
      cand.residual[ms[k].var] = vnorm(r) / sqrt(den);
      if (abs(xi.im) >= opt.eigen_tol) cand.real = false;
    }
    out.push_back(std::move(cand));
  }
  // deterministic order: real first, then by coordinates
  std::sort(out.begin(), out.end(), [](const EigenCandidate& a, const EigenCandidate& b) {
    if (a.real != b.real) return a.real;
    for (auto& [k, v] : a.re) {
      if (v != b.re.at(k)) return v < b.re.at(k);
      if (a.im.at(k) != b.im.at(k)) return a.im.at(k) < b.im.at(k);
    }
    return false;
  });
  return out;
}

StickelbergerResult solve_stickelberger(const PolySystem& F, const RingPtr& order, const EigenOptions& opt,
                                        const BigFloat& residual_tol, const GroebnerBudget& budget) {
  StickelbergerResult res;
  res.basis = groebner_basis(F, order, budget);
  if (is_trivial_ideal(res.basis)) throw UsageError("the ideal is trivial (no solutions)");
  res.standard = standard_monomials(res.basis);
  for (auto& v : order->vars()) res.matrices.push_back(multiplication_matrix(res.basis, res.standard, v));
  res.commute = matrices_commute(res.matrices);
  res.candidates = eigen_solve_system(res.matrices, opt);
  PrecisionScope scope(opt.precision_bits);
  PolySystem orig;
  for (auto& f : F) orig.push_back(f.in_ring(order));
  for (size_t i = 0; i < res.candidates.size(); ++i) {
    auto& c = res.candidates[i];
    if (!c.real) {
      ++res.complex_candidates;
      continue;
    }
    RealSolution s;
    for (auto& [k, v] : c.re) s.values[k] = BigFloat(v);
    s.residual = max_residual(orig, s.values);
    s.provenance = "eig[" + std::to_string(i + 1) + "]";
    if (s.residual < residual_tol) res.solutions.push_back(s);
    else res.rejected.push_back(s.provenance + " residual " + to_string(s.residual, 6));
  }
  res.solutions = dedup_solutions(std::move(res.solutions), residual_tol);
  return res;
}

RouteComparison compare_solution_sets(const std::vector<RealSolution>& a, const std::vector<RealSolution>& b,
                                      const BigFloat& tol) {
  RouteComparison rc;
  auto dist = [](const RealSolution& x, const RealSolution& y) {
    BigFloat d = 0;
    for (auto& [k, v] : x.values) {
      auto it = y.values.find(k);
      if (it == y.values.end()) return BigFloat(1e300);
      BigFloat e = abs(v - it->second);
      if (e > d) d = e;
    }
    return d;
  };
  std::vector<bool> matched(b.size(), false);
  for (auto& x : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!matched[j] && dist(x, b[j]) < tol) {
        matched[j] = found = true;
        break;
      }
    }
    if (!found) rc.diagnostics.push_back("only in first route: " + x.provenance);
  }
  for (size_t j = 0; j < b.size(); ++j)
    if (!matched[j]) rc.diagnostics.push_back("only in second route: " + b[j].provenance);
  rc.agree = rc.diagnostics.empty() && a.size() == b.size();
  return rc;
}

}  // namespace h2sn
