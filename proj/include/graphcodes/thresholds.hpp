#pragma once

#include <vector>

namespace graphcodes::thresholds {

// Binary entropy in bits; 0 at the endpoints.
double entropy(double p);
// Entropy of a distribution in bits; zero entries contribute nothing.
double entropy(const std::vector<double>& z);
double log2_binom(unsigned n, unsigned i);

// Exponent of a root-finding result: value plus the inner root it was
// evaluated at and a relative residual of the defining equation.
struct CurveValue {
    double value = 0;
    double x = 0;        // inner root
    double residual = 0;
};

// Growth-rate exponent of the expected number of weight-(sigma*N) words a
// degree-2 construction leaves uncorrectable; the inner maximization over
// vertex weight profiles is solved at its unique stationary point.
// Needs 1 <= t <= n-2.
CurveValue f_bipartite(unsigned n, unsigned t, double sigma);

struct ThresholdResult {
    double value = 0;
    std::vector<double> roots;  // inner roots at the threshold point
    double residual = 0;        // relative defect of the boundary equation
    const char* method = "";
};

// Largest sigma with f_bipartite(sigma) < (n-1)h(sigma): log grid scan from
// 1e-9 then bisection. 0.0 when the condition already fails at the floor.
ThresholdResult sigma0_bipartite(unsigned n, unsigned t);

// Large-n form of the same threshold at designed fraction tau, with the
// finite-n penalty (1 + log2 n)/n. The condition always fails near 0, so
// the reported value is the upper boundary of the interval where it holds:
// 0.0 if it never holds, tau if it still holds at tau.
double sigma0_bipartite_asymptotic(double n, double tau);

struct EntropyMax {
    double value = 0;           // bits
    std::vector<double> z;      // maximizing weight-type distribution
    double x = 0, y = 0;        // exponential family parameters e^alpha, e^beta
    double residual = 0;        // |g1| + |g2| of the stationarity system
};

// max h(z) + sum z_i log2 C(n,i) over distributions z on {0..n} with mean
// weight gamma*n and balance sum_{i<=t} i z_i = t sum_{i>=d0-t} z_i.
// Solved by damped Newton on the two dual parameters; nested bisection
// fallback. Needs t >= 1, d0 > 2t.
EntropyMax tilde_f(unsigned n, unsigned t, unsigned d0, double gamma);

// Closed form of tilde_f for t=1, d0=3 via the reduced one-variable
// stationarity equation. Cross-check for the Newton path.
CurveValue tilde_f_hamming_closed_form(unsigned n, double gamma);

// Largest gamma with (l/n) tilde_f(gamma) < (l-1) h(gamma).
ThresholdResult gamma0_hypergraph(unsigned n, unsigned t, unsigned d0, unsigned l);

// Ensemble relative distance: largest omega such that
// (l/n) log2((1 + sum_{i>=d0} C(n,i) x0^i) / x0^(omega n)) < (l-1) h(omega),
// where x0 is the unique positive root of
// omega n + sum_{i>=d0} C(n,i)(omega n - i) x^i = 0.
ThresholdResult delta_bound(unsigned n, unsigned d0, unsigned l);

// Limit distance: root of h(x)/x = (l/(l-1)) h(delta0)/delta0 on (0, 1/2).
double delta_asymptotic(unsigned l, double delta0);

struct TauThreshold {
    double value = 0;
    double tau = 0;  // maximizing designed fraction
};

// Limit decoding threshold: max over tau in (0, delta0/2] of
// min(tau, x0(tau)) where x0(tau) bounds the region where
// (1-x/d)h(x tau/(d-x)) + (x/d)h(d-tau) + eps < (1-1/l)h(x), d = delta0.
TauThreshold gamma0_asymptotic(unsigned l, double delta0, double eps = 0.0);

} // namespace graphcodes::thresholds
