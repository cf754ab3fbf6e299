#include "graphcodes/thresholds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace graphcodes::thresholds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

// Streaming log2(sum 2^t): track the max, rescale the accumulated sum when
// a larger term arrives. Exact for the empty sum (-inf).
class LogSum {
public:
    void add(double t) {
        if (t == -kInf) return;
        if (t <= m_) {
            s_ += std::exp2(t - m_);
        } else {
            s_ = s_ * std::exp2(m_ - t) + 1.0;
            m_ = t;
        }
    }
    double value() const { return m_ == -kInf ? -kInf : m_ + std::log2(s_); }

private:
    double m_ = -kInf;
    double s_ = 0.0;
};

double lse2(double a, double b) {
    LogSum s;
    s.add(a);
    s.add(b);
    return s.value();
}

// Log-spaced grid point k of [lo, hi] with `grid` points.
double log_grid(double lo, double hi, int grid, int k) {
    return lo * std::pow(hi / lo, (double)k / (grid - 1));
}

// Bisection on a sign predicate: pred true at lo side. Runs to double
// exhaustion; the callers' residual checks rely on that.
double bisect(std::function<bool(double)> pred, double lo, double hi, int iters = 200) {
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (pred(mid)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Count sign flips of f over [lo, hi] at `steps` points; the solvers below
// all assume exactly one and refuse to silently pick among several roots.
void assert_single_crossing(const std::function<double(double)>& f, double lo, double hi,
                            int steps, const char* what) {
    int flips = 0;
    double prev = f(lo);
    for (int k = 1; k < steps; ++k) {
        double cur = f(lo + (hi - lo) * k / (steps - 1));
        if ((prev > 0) != (cur > 0)) ++flips;
        prev = cur;
    }
    if (flips != 1)
        throw std::runtime_error(std::string(what) + ": expected one sign change, saw " +
                                 std::to_string(flips));
}

} // namespace

double entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy(const std::vector<double>& z) {
    double h = 0.0;
    for (double p : z)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double log2_binom(unsigned n, unsigned i) {
    if (i > n) return -kInf;
    return (std::lgamma((double)n + 1) - std::lgamma((double)i + 1) -
            std::lgamma((double)(n - i) + 1)) / kLn2;
}

namespace {

// Signed log-gap of the stationarity equation at x = 2^u:
// sigma*S1*M2' - (1-sigma)*M1*S2 in log space; positive means x too small.
double stationarity_gap(unsigned n, unsigned t, double sigma, double u) {
    LogSum lS1, lS2, lM1, lM2p;
    for (unsigned i = 0; i <= t; ++i) lS1.add(log2_binom(n, i) + (double)i * u);
    for (unsigned j = t + 1; j <= n; ++j) lS2.add(log2_binom(n, j) + (double)j * u);
    for (unsigned i = 1; i <= t; ++i) lM1.add(std::log2((double)i) + log2_binom(n, i) + (double)i * u);
    for (unsigned j = t + 1; j < n; ++j) lM2p.add(std::log2((double)(n - j)) + log2_binom(n, j) + (double)j * u);
    return std::log2(sigma) + lS1.value() + lM2p.value() -
           (std::log2(1.0 - sigma) + lM1.value() + lS2.value());
}

} // namespace

CurveValue f_bipartite(unsigned n, unsigned t, double sigma) {
    if (t < 1 || t + 2 > n) throw std::invalid_argument("f_bipartite: need 1 <= t <= n-2");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("f_bipartite: sigma in (0,1)");
    const double lo = -99.6, hi = 99.6;
    auto gap = [&](double u) { return stationarity_gap(n, t, sigma, u); };
    if (!(gap(lo) > 0) || !(gap(hi) < 0))
        throw std::runtime_error("f_bipartite: stationarity bracket failed");
    assert_single_crossing(gap, lo, hi, 128, "f_bipartite stationarity");
    double u = bisect([&](double v) { return gap(v) > 0; }, lo, hi);

    LogSum lS1, lS2;
    for (unsigned i = 0; i <= t; ++i) lS1.add(log2_binom(n, i) + (double)i * u);
    for (unsigned j = t + 1; j <= n; ++j) lS2.add(log2_binom(n, j) + (double)j * u);
    CurveValue out;
    out.value = entropy(sigma) - sigma * n * u + sigma * lS2.value() + (1.0 - sigma) * lS1.value();
    out.x = std::exp2(u);
    out.residual = std::abs(std::expm1(kLn2 * gap(u)));
    return out;
}

ThresholdResult sigma0_bipartite(unsigned n, unsigned t) {
    auto D = [&](double s) { return f_bipartite(n, t, s).value - (n - 1.0) * entropy(s); };
    const double floor = 1e-9, ceil = 0.5;
    const int grid = 400;
    ThresholdResult out;
    if (D(floor) >= 0) {
        out.value = 0.0;
        out.method = "condition fails at scan floor";
        return out;
    }
    double prev = floor;
    for (int k = 1; k < grid; ++k) {
        double s = log_grid(floor, ceil, grid, k);
        if (D(s) >= 0) {
            double root = bisect([&](double v) { return D(v) < 0; }, prev, s);
            CurveValue f = f_bipartite(n, t, root);
            out.value = root;
            out.roots = {f.x};
            double scale = std::max(std::abs(f.value), (n - 1.0) * entropy(root));
            out.residual = std::abs(f.value - (n - 1.0) * entropy(root)) / scale;
            out.method = "log grid + bisection";
            return out;
        }
        prev = s;
    }
    out.value = ceil;
    out.method = "condition holds through 1/2";
    return out;
}

double sigma0_bipartite_asymptotic(double n, double tau) {
    if (!(tau > 0.0 && tau <= 0.5)) throw std::invalid_argument("tau in (0, 1/2]");
    if (!(n > 1.0)) throw std::invalid_argument("n > 1 required");
    const double eps = (1.0 + std::log2(n)) / n;
    auto holds = [&](double x) {
        return (1.0 - x) * entropy(x * (1.0 - tau) / (1.0 - x)) + x * entropy(tau) + eps <
               entropy(x);
    };
    const double floor = 1e-9;
    const int grid = 2000;
    if (!holds(floor)) {
        // leading region always fails at finite n; find where the condition
        // first starts holding, then where it stops again
        int k = 1;
        while (k < grid && !holds(log_grid(floor, tau, grid, k))) ++k;
        if (k == grid) return 0.0;
        double prev = log_grid(floor, tau, grid, k);
        for (++k; k < grid; ++k) {
            double x = log_grid(floor, tau, grid, k);
            if (!holds(x)) return bisect(holds, prev, x);
            prev = x;
        }
        return tau;
    }
    double prev = floor;
    for (int k = 1; k < grid; ++k) {
        double x = log_grid(floor, tau, grid, k);
        if (!holds(x)) return bisect(holds, prev, x);
        prev = x;
    }
    return tau;
}

namespace {

struct FamilyMoments {
    std::vector<double> w; // scaled weights
    double W = 0, A = 0, P = 0, Q = 0;
    double log_max = 0; // natural log scale factor
};

// w_i proportional to C(n,i) e^(alpha i + beta a_i), scaled by the largest
// natural-log exponent so the sums stay in range.
FamilyMoments family_moments(unsigned n, unsigned t, unsigned d0,
                             const std::vector<double>& lc, const std::vector<int>& a,
                             double alpha, double beta) {
    FamilyMoments fm;
    fm.w.resize(n + 1);
    double m = -kInf;
    std::vector<double> ex(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        ex[i] = lc[i] + alpha * i + beta * a[i];
        m = std::max(m, ex[i]);
    }
    fm.log_max = m;
    for (unsigned i = 0; i <= n; ++i) {
        fm.w[i] = std::exp(ex[i] - m);
        fm.W += fm.w[i];
        fm.A += i * fm.w[i];
        if (i >= 1 && i <= t) fm.P += i * fm.w[i];
        if (i >= d0 - t) fm.Q += fm.w[i];
    }
    fm.Q *= t;
    return fm;
}

} // namespace

EntropyMax tilde_f(unsigned n, unsigned t, unsigned d0, double gamma) {
    if (t < 1 || d0 <= 2 * t || d0 > n)
        throw std::invalid_argument("tilde_f: need 1 <= t, 2t < d0 <= n");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("tilde_f: gamma in (0,1)");

    std::vector<double> lc(n + 1);
    std::vector<int> a(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        lc[i] = log2_binom(n, i) * kLn2;
        a[i] = i <= t ? (int)i : (i < d0 - t ? 0 : -(int)t);
    }
    auto residuals = [&](double alpha, double beta, FamilyMoments& fm) {
        fm = family_moments(n, t, d0, lc, a, alpha, beta);
        double g1 = std::log(fm.A / fm.W) - std::log(gamma * n);
        double g2 = std::log(fm.P) - std::log(fm.Q);
        return std::make_pair(g1, g2);
    };

    double alpha = std::log(gamma / (1.0 - gamma));
    double beta = 0.0;
    FamilyMoments fm;
    auto [g1, g2] = residuals(alpha, beta, fm);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(g1) < 1e-13 && std::abs(g2) < 1e-13) { converged = true; break; }
        double sum_i2w = 0, sum_iaw = 0, sum_aw = 0, sum_i2w_head = 0, sum_iw_tail = 0, sum_w_tail = 0;
        for (unsigned i = 0; i <= n; ++i) {
            sum_i2w += (double)i * i * fm.w[i];
            sum_iaw += (double)i * a[i] * fm.w[i];
            sum_aw += (double)a[i] * fm.w[i];
            if (i >= 1 && i <= t) sum_i2w_head += (double)i * i * fm.w[i];
            if (i >= d0 - t) { sum_iw_tail += i * fm.w[i]; sum_w_tail += fm.w[i]; }
        }
        double j11 = sum_i2w / fm.A - fm.A / fm.W;
        double j12 = sum_iaw / fm.A - sum_aw / fm.W;
        double j21 = sum_i2w_head / fm.P - sum_iw_tail / sum_w_tail;
        double j22 = sum_i2w_head / fm.P + t;
        double det = j11 * j22 - j12 * j21;
        if (det == 0 || !std::isfinite(det)) break;
        double da = -(j22 * g1 - j12 * g2) / det;
        double db = -(-j21 * g1 + j11 * g2) / det;
        double step = 1.0, base = std::abs(g1) + std::abs(g2);
        bool moved = false;
        for (int half = 0; half < 60; ++half) {
            FamilyMoments fm2;
            auto [n1, n2] = residuals(alpha + step * da, beta + step * db, fm2);
            if (std::isfinite(n1) && std::isfinite(n2) && std::abs(n1) + std::abs(n2) < base) {
                alpha += step * da;
                beta += step * db;
                g1 = n1; g2 = n2; fm = std::move(fm2);
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }

    if (!converged) {
        // nested bisection: g2 is strictly increasing in beta, and the outer
        // mean-weight residual is increasing in alpha
        auto beta_for = [&](double al) {
            FamilyMoments f2;
            auto g2_of = [&](double b) { return residuals(al, b, f2).second; };
            double blo = 0, bhi = 0, step2 = 1.0;
            while (g2_of(blo) > 0 && step2 < 1e18) { blo -= step2; step2 *= 2; }
            step2 = 1.0;
            while (g2_of(bhi) < 0 && step2 < 1e18) { bhi += step2; step2 *= 2; }
            return bisect([&](double b) { return g2_of(b) < 0; }, blo, bhi, 120);
        };
        auto outer = [&](double al) {
            FamilyMoments f2;
            return residuals(al, beta_for(al), f2).first;
        };
        double alo = alpha, ahi = alpha, step2 = 1.0;
        while (outer(alo) > 0 && step2 < 1e6) { alo -= step2; step2 *= 2; }
        step2 = 1.0;
        while (outer(ahi) < 0 && step2 < 1e6) { ahi += step2; step2 *= 2; }
        alpha = bisect([&](double al) { return outer(al) < 0; }, alo, ahi, 120);
        beta = beta_for(alpha);
        std::tie(g1, g2) = residuals(alpha, beta, fm);
        if (std::abs(g1) + std::abs(g2) > 1e-9)
            throw std::runtime_error("tilde_f: stationarity system did not converge");
    }

    EntropyMax out;
    double lnZ = fm.log_max + std::log(fm.W);
    out.value = (lnZ - alpha * gamma * n) / kLn2;
    out.z.resize(n + 1);
    for (unsigned i = 0; i <= n; ++i) out.z[i] = fm.w[i] / fm.W;
    out.x = std::exp(alpha);
    out.y = std::exp(beta);
    out.residual = std::abs(g1) + std::abs(g2);
    return out;
}

CurveValue tilde_f_hamming_closed_form(unsigned n, double gamma) {
    if (n < 3) throw std::invalid_argument("closed form: n >= 3");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma in (0,1)");
    auto tail = [&](double u) {
        LogSum q;
        for (unsigned i = 2; i <= n; ++i) q.add(log2_binom(n, i) + (i + 1.0) * u);
        return q.value();
    };
    auto gap = [&](double u) {
        LogSum p;
        for (unsigned i = 2; i <= n; ++i)
            p.add(std::log2(i + 1.0) + log2_binom(n, i) + (i + 1.0) * u);
        double lq = tail(u);
        double lden = lse2(std::log2(2.0 * n) + lq, 0.5 * (std::log2((double)n) + lq));
        return p.value() - lden - std::log2(gamma);
    };
    const double lo = -120.0, hi = 40.0;
    if (!(gap(lo) < 0) || !(gap(hi) > 0))
        throw std::runtime_error("closed form: bracket failed");
    assert_single_crossing(gap, lo, hi, 128, "closed form stationarity");
    double u = bisect([&](double v) { return gap(v) < 0; }, lo, hi);
    double lq = tail(u);
    CurveValue out;
    out.value = -gamma * n * u + lse2(0.0, 1.0 + 0.5 * (std::log2((double)n) + lq));
    out.x = std::exp2(u);
    out.residual = std::abs(std::expm1(kLn2 * gap(u)));
    return out;
}

ThresholdResult gamma0_hypergraph(unsigned n, unsigned t, unsigned d0, unsigned l) {
    if (l < 2) throw std::invalid_argument("gamma0_hypergraph: l >= 2");
    auto D = [&](double g) {
        return (double)l / n * tilde_f(n, t, d0, g).value - (l - 1.0) * entropy(g);
    };
    const double floor = 1e-9, ceil = 0.5;
    const int grid = 480;
    ThresholdResult out;
    if (D(floor) >= 0) {
        out.value = 0.0;
        out.method = "condition fails at scan floor";
        return out;
    }
    double prev = floor;
    for (int k = 1; k < grid; ++k) {
        double g = log_grid(floor, ceil, grid, k);
        if (D(g) >= 0) {
            double root = bisect([&](double v) { return D(v) < 0; }, prev, g);
            EntropyMax em = tilde_f(n, t, d0, root);
            out.value = root;
            out.roots = {em.x, em.y};
            double lhs = (double)l / n * em.value, rhs = (l - 1.0) * entropy(root);
            out.residual = std::abs(lhs - rhs) / std::max(std::abs(lhs), rhs);
            out.method = "log grid + bisection";
            return out;
        }
        prev = g;
    }
    out.value = ceil;
    out.method = "condition holds through 1/2";
    return out;
}

namespace {

// log2 of the unique positive root of
// omega n + sum_{i>=d0} C(n,i)(omega n - i) x^i = 0.
// The coefficient signs change exactly once, so the root is unique.
double log2_x0_of_omega(unsigned n, unsigned d0, double omega) {
    const double wn = omega * n;
    auto sgn = [&](double u) {
        LogSum pos, neg;
        pos.add(std::log2(wn));
        for (unsigned i = d0; i <= n; ++i) {
            double c = wn - i;
            if (c > 0) pos.add(std::log2(c) + log2_binom(n, i) + i * u);
            else if (c < 0) neg.add(std::log2(-c) + log2_binom(n, i) + i * u);
        }
        return pos.value() - neg.value();
    };
    const double lo = -99.6, hi = 99.6;
    if (!(sgn(lo) > 0) || !(sgn(hi) < 0))
        throw std::runtime_error("distance bound: root bracket failed");
    assert_single_crossing(sgn, lo, hi, 64, "distance bound root");
    return bisect([&](double u) { return sgn(u) > 0; }, lo, hi, 120);
}

} // namespace

ThresholdResult delta_bound(unsigned n, unsigned d0, unsigned l) {
    if (l < 2) throw std::invalid_argument("delta_bound: l >= 2");
    if (d0 < 1 || d0 > n) throw std::invalid_argument("delta_bound: 1 <= d0 <= n");
    auto gap = [&](double omega) { // lhs - rhs, negative while the bound holds
        double u = log2_x0_of_omega(n, d0, omega);
        LogSum s;
        for (unsigned i = d0; i <= n; ++i) s.add(log2_binom(n, i) + i * u);
        double lhs = (double)l / n * (lse2(0.0, s.value()) - omega * n * u);
        return lhs - (l - 1.0) * entropy(omega);
    };
    const double floor = 1e-9, ceil = 0.5;
    const int grid = 512;
    ThresholdResult out;
    if (gap(floor) >= 0) {
        out.value = 0.0;
        out.method = "condition fails at scan floor";
        return out;
    }
    double prev = floor;
    for (int k = 1; k < grid; ++k) {
        double w = log_grid(floor, ceil, grid, k);
        if (gap(w) >= 0) {
            double root = bisect([&](double v) { return gap(v) < 0; }, prev, w);
            out.value = root;
            out.roots = {std::exp2(log2_x0_of_omega(n, d0, root))};
            out.residual = std::abs(gap(root)) / ((l - 1.0) * entropy(root));
            out.method = "log grid + bisection";
            return out;
        }
        prev = w;
    }
    out.value = ceil;
    out.method = "condition holds through 1/2";
    return out;
}

double delta_asymptotic(unsigned l, double delta0) {
    if (l < 2) throw std::invalid_argument("delta_asymptotic: l >= 2");
    if (!(delta0 >= 1e-9 && delta0 <= 0.5)) throw std::invalid_argument("delta0 in [1e-9, 1/2]");
    const double rhs = (double)l / (l - 1.0) * entropy(delta0) / delta0;
    // h(x)/x decreases from +inf to 2 on (0, 1/2]; rhs > 2 always
    return bisect([&](double x) { return entropy(x) / x > rhs; }, 1e-200, 0.5, 400);
}

namespace {

double x0_of_tau(unsigned l, double d, double tau, double eps) {
    auto holds = [&](double x) {
        if (x >= d) return false;
        double arg = x * tau / (d - x);
        if (arg > 1.0) return false;
        double lhs = (1.0 - x / d) * entropy(arg) + (x / d) * entropy(d - tau) + eps;
        return lhs < (1.0 - 1.0 / l) * entropy(x);
    };
    const double floor = 1e-12, ceil = d * (1.0 - 1e-12);
    const int grid = 4000;
    if (!holds(floor)) return 0.0;
    double prev = floor;
    for (int k = 1; k < grid; ++k) {
        double x = log_grid(floor, ceil, grid, k);
        if (!holds(x)) return bisect(holds, prev, x, 100);
        prev = x;
    }
    return ceil;
}

} // namespace

TauThreshold gamma0_asymptotic(unsigned l, double delta0, double eps) {
    if (l < 2) throw std::invalid_argument("gamma0_asymptotic: l >= 2");
    if (!(delta0 > 0.0 && delta0 <= 0.5)) throw std::invalid_argument("delta0 in (0, 1/2]");
    double lo = 1e-9, hi = delta0 / 2;
    TauThreshold best;
    for (int round = 0; round < 6; ++round) {
        int arg = 0;
        double bv = -1;
        for (int k = 0; k < 64; ++k) {
            double tau = lo + (hi - lo) * k / 63;
            double v = std::min(tau, x0_of_tau(l, delta0, tau, eps));
            if (v > bv) { bv = v; arg = k; }
        }
        double tau = lo + (hi - lo) * arg / 63;
        if (bv > best.value) { best.value = bv; best.tau = tau; }
        double nlo = lo + (hi - lo) * std::max(0, arg - 1) / 63;
        double nhi = lo + (hi - lo) * std::min(63, arg + 1) / 63;
        lo = nlo; hi = nhi;
    }
    return best;
}

} // namespace graphcodes::thresholds
