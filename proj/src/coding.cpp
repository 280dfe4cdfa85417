#include "rtq/coding.hpp"

#include <cmath>

#include "rtq/skipping.hpp"

namespace rtq::coding {

namespace {

// int_0^D e^{-a t} dt
double integ_exp(double a, double D) {
    if (a == 0)
        return D;
    return -std::expm1(-a * D) / a;
}

// int_0^D t e^{-a t} dt, series below x = aD = 1e-2 to dodge cancellation
double integ_t_exp(double a, double D) {
    const double x = a * D;
    if (x < 1e-2) {
        const double g = 0.5 + x * (-1.0 / 3 + x * (1.0 / 8 + x * (-1.0 / 30 + x / 144)));
        return D * D * g;
    }
    return (1.0 - std::exp(-x) * (1.0 + x)) / (a * a);
}

// Success integral of a buffered native whose partner-flow rate is lother:
//   int_0^D mu e^{-mu t} e^{-L t} (1 + lother t) (1 - e^{-mu (d - t)}) dt
double native_success(double L, double lother, double mu, double d, double D) {
    if (D <= 0)
        return 0.0;
    const double emud = std::exp(-mu * d);
    return mu * (integ_exp(mu + L, D) + lother * integ_t_exp(mu + L, D)) -
           mu * emud * (integ_exp(L, D) + lother * integ_t_exp(L, D));
}

// Solve the 3x3 system A x = b by elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> A, std::array<double, 3> b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col]))
                piv = r;
        if (std::fabs(A[piv][col]) < 1e-300)
            throw SingularSystem("clearance system is numerically singular");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 3; ++c)
                A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 3; ++c)
            s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

}  // namespace

double success_prob_empty(const ModelParams& p) {
    return -std::expm1(-p.mu * p.d);
}

double success_prob_busy(const ModelParams& p, int flow) {
    if (flow != 1 && flow != 2)
        throw DomainError("flow selector must be 1 or 2");
    const double lother = (flow == 1) ? p.lambda2 : p.lambda1;
    return native_success(p.total_rate(), lother, p.mu, p.d, p.d - p.theta);
}

double success_prob_full_other(const ModelParams& p) {
    // Same as native_success with no partner-tolerance term.
    return native_success(p.total_rate(), 0.0, p.mu, p.d, p.d - p.theta);
}

std::array<double, 3> clearance_expectations(const ModelParams& p, int flow_type) {
    if (flow_type < 1 || flow_type > 3)
        throw DomainError("flow_type must be 1, 2, or 3");
    const double lam = p.total_rate();
    const double alpha = -std::expm1(-(lam + p.mu) * (p.d - p.theta));
    const double b1 = alpha * p.lambda1 / (lam + p.mu);
    const double b2 = alpha * p.lambda2 / (lam + p.mu);
    const double c = alpha / (lam + p.mu);
    // Unknowns x_j: occupancy of the requested type in a period started by a
    // type-(j+1) unit. A native survives own-flow overwrites into the same
    // type and turns coded on a partner arrival; a coded unit is overwritten
    // into either native type.
    const std::array<std::array<double, 3>, 3> A{{
        {1 - b1, 0, -b2},
        {0, 1 - b2, -b1},
        {-b1, -b2, 1},
    }};
    std::array<double, 3> rhs{};
    rhs[flow_type - 1] = c;
    return solve3(A, rhs);
}

ClearanceExpectations clearance_matrix(const ModelParams& p) {
    ClearanceExpectations ce;
    for (int i = 1; i <= 3; ++i)
        ce.t[i - 1] = clearance_expectations(p, i);
    return ce;
}

StateDistribution state_distribution(const ModelParams& p) {
    const double lam = p.total_rate();
    if (lam == 0)
        throw DomainError("state distribution needs lambda1 + lambda2 > 0");
    const double e_idle = 1.0 / lam;
    const double e_bp = skipping::expected_busy_period(p);  // merged-rate Eq. dynamics
    const double e_cycle = e_idle + e_bp;
    const ClearanceExpectations ce = clearance_matrix(p);
    StateDistribution sd;
    sd.p_empty = e_idle / e_cycle;
    double full_sum = 0.0;
    double full[3];
    for (int i = 0; i < 3; ++i) {
        // Expected per-cycle time with a type-(i+1) unit waiting: the buffer
        // receives a first arrival during lambda/mu of the busy period, typed
        // by the arrival mix.
        full[i] = (p.lambda1 * ce.t[i][0] + p.lambda2 * ce.t[i][1]) / p.mu / e_cycle;
        full_sum += full[i];
    }
    sd.p_full_type1 = full[0];
    sd.p_full_type2 = full[1];
    sd.p_full_coded = full[2];
    sd.p_busy = 1.0 - sd.p_empty - full_sum;
    return sd;
}

double flow_goodput(const ModelParams& p, int flow) {
    if (flow != 1 && flow != 2)
        throw DomainError("flow selector must be 1 or 2");
    const double lk = (flow == 1) ? p.lambda1 : p.lambda2;
    if (lk == 0)
        return 0.0;
    const StateDistribution sd = state_distribution(p);
    const double se = success_prob_empty(p);
    const double sb = success_prob_busy(p, flow);
    const double so = success_prob_full_other(p);
    // Arrival-seen states (PASTA): empty -> immediate service; busy or a
    // same-flow/coded unit waiting -> the arrival waits as (or overwrites
    // into) a native unit; an other-flow native waiting -> codes with it.
    const double p_own = (flow == 1) ? sd.p_full_type1 : sd.p_full_type2;
    const double p_other = (flow == 1) ? sd.p_full_type2 : sd.p_full_type1;
    return lk * (sd.p_empty * se + (sd.p_busy + p_own + sd.p_full_coded) * sb + p_other * so);
}

GoodputReport goodput_report(const ModelParams& p) {
    GoodputReport r;
    r.gamma_flow1 = flow_goodput(p, 1);
    r.gamma_flow2 = flow_goodput(p, 2);
    r.gamma_total = r.gamma_flow1 + r.gamma_flow2;
    ModelParams base = p;
    base.lambda1 = p.total_rate();
    base.lambda2 = 0;
    base.theta = 0;
    r.gamma_base = (base.lambda1 == 0) ? 0.0 : flow_goodput(base, 1);
    r.gain = (r.gamma_base > 0) ? (r.gamma_total - r.gamma_base) / r.gamma_base : 0.0;
    return r;
}

}  // namespace rtq::coding
