#include "gdrb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gdrb/decomp.hpp"
#include "gdrb/error.hpp"
#include "gdrb/norms.hpp"

namespace gdrb {

namespace {

constexpr std::uint64_t kCiNoiseTag = 0xC1;
constexpr std::uint64_t kCiSequenceTag = 0xC2;

struct WeightedRows {
    std::vector<double> m, y, w;
};

// Variances below this are indistinguishable from exactly-degenerate rows
// (round-off between identical sequences), not statistical information.
constexpr double kDegenerateVariance = 1e-20;

WeightedRows weighted_rows(const DecayDataset& ds, int min_m, std::size_t min_rows,
                           const char* who)
{
    WeightedRows rows;
    double smallest_pos = 0.0;
    for (const DecayRow& r : ds.rows) {
        if (r.m < min_m)
            continue;
        const double v = r.variance > kDegenerateVariance ? r.variance : 0.0;
        rows.m.push_back(double(r.m));
        rows.y.push_back(r.mean);
        rows.w.push_back(v);
        if (v > 0.0 && (smallest_pos == 0.0 || v < smallest_pos))
            smallest_pos = v;
    }
    if (rows.m.size() < min_rows)
        throw ValidationError(std::string(who) + ": needs at least " + std::to_string(min_rows)
                              + " rows with m >= " + std::to_string(min_m));
    // zero variances clamped to the smallest positive one; all-zero -> equal weights
    for (double& v : rows.w)
        v = (v > 0.0) ? 1.0 / v : (smallest_pos > 0.0 ? 1.0 / smallest_pos : 1.0);
    return rows;
}

double fixed_spam_sse(const WeightedRows& rows, double p)
{
    double sse = 0.0;
    for (std::size_t i = 0; i < rows.m.size(); ++i) {
        const double resid = rows.y[i] - 0.5 * std::pow(p, rows.m[i]) - 0.5;
        sse += rows.w[i] * resid * resid;
    }
    return sse;
}

} // namespace

FitResult fit_fixed_spam(const DecayDataset& ds, int min_m)
{
    const WeightedRows rows = weighted_rows(ds, min_m, 2, "fit_fixed_spam");

    FitResult fit;
    fit.model = "fixed_spam";

    const double span = *std::max_element(rows.y.begin(), rows.y.end())
                        - *std::min_element(rows.y.begin(), rows.y.end());
    if (span < 1e-14)
        fit.flat_likelihood = true;

    // Coarse scan to bracket the minimum, then golden-section refinement.
    constexpr int kScan = 512;
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kScan; ++i) {
        const double v = fixed_spam_sse(rows, double(i) / kScan);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = double(std::max(0, best - 1)) / kScan;
    double b = double(std::min(kScan, best + 1)) / kScan;
    if (fixed_spam_sse(rows, a) < best_val || fixed_spam_sse(rows, b) < best_val)
        fit.flat_likelihood = true; // bracket refinement found no valley

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = fixed_spam_sse(rows, c), fd = fixed_spam_sse(rows, d);
    int iters = 0;
    while (b - a > 1e-11 && iters < 200) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = fixed_spam_sse(rows, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = fixed_spam_sse(rows, d);
        }
        ++iters;
    }
    fit.p_est = 0.5 * (a + b);
    fit.A_est = 0.5;
    fit.B_est = 0.5;
    fit.weighted_sse = fixed_spam_sse(rows, fit.p_est);
    fit.iterations = iters;
    return fit;
}

FitResult fit_free(const DecayDataset& ds, int min_m)
{
    const WeightedRows rows = weighted_rows(ds, min_m, 4, "fit_free");
    const std::size_t n = rows.m.size();

    const double y_min = *std::min_element(rows.y.begin(), rows.y.end());
    const double y_max = *std::max_element(rows.y.begin(), rows.y.end());

    // Initialization: B from the floor, A from the span, p from a log-linear
    // regression of the excess over the floor.
    double b0 = y_min;
    double a0 = std::max(y_max - y_min, 1e-12);
    double sm = 0, sl = 0, sml = 0, smm = 0;
    int used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double excess = rows.y[i] - b0;
        if (excess > std::max(1e-12, 1e-6 * a0)) {
            const double l = std::log(excess);
            sm += rows.m[i];
            sl += l;
            sml += rows.m[i] * l;
            smm += rows.m[i] * rows.m[i];
            ++used;
        }
    }
    double p0 = 0.9;
    if (used >= 2) {
        const double denom = used * smm - sm * sm;
        if (std::abs(denom) > 1e-30)
            p0 = std::clamp(std::exp((used * sml - sm * sl) / denom), 1e-6, 1.0 - 1e-9);
    }

    Eigen::Vector3d x(a0, b0, p0);
    auto sse_of = [&](const Eigen::Vector3d& v) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double resid = v(0) * std::pow(v(2), rows.m[i]) + v(1) - rows.y[i];
            sse += rows.w[i] * resid * resid;
        }
        return sse;
    };

    double sse = sse_of(x);
    double lambda = 1e-3;
    int iter = 0;
    std::vector<double> trace{ sse };
    for (; iter < 200; ++iter) {
        Eigen::MatrixXd jac(n, 3);
        Eigen::VectorXd resid(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double sw = std::sqrt(rows.w[i]);
            const double pm = std::pow(x(2), rows.m[i]);
            resid(Eigen::Index(i)) = sw * (x(0) * pm + x(1) - rows.y[i]);
            jac(Eigen::Index(i), 0) = sw * pm;
            jac(Eigen::Index(i), 1) = sw;
            jac(Eigen::Index(i), 2) = sw * x(0) * rows.m[i] * std::pow(x(2), rows.m[i] - 1.0);
        }
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d jtr = jac.transpose() * resid;

        bool accepted = false;
        Eigen::Vector3d step = Eigen::Vector3d::Zero();
        for (int attempt = 0; attempt < 24; ++attempt) {
            Eigen::Matrix3d damped = jtj;
            for (int k = 0; k < 3; ++k)
                damped(k, k) += lambda * std::max(jtj(k, k), 1e-12);
            step = damped.ldlt().solve(-jtr);
            Eigen::Vector3d cand = x + step;
            cand(2) = std::clamp(cand(2), 0.0, 1.0);
            const double cand_sse = sse_of(cand);
            if (cand_sse <= sse) {
                x = cand;
                sse = cand_sse;
                lambda = std::max(lambda / 3.0, 1e-14);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        trace.push_back(sse);
        if (!accepted || step.norm() < 1e-12)
            break;
    }
    if (iter >= 200) {
        std::ostringstream msg;
        msg << "fit_free: no convergence after 200 iterations; sse trace:";
        for (std::size_t i = trace.size() > 6 ? trace.size() - 6 : 0; i < trace.size(); ++i)
            msg << " " << trace[i];
        throw NumericalError(msg.str());
    }

    FitResult fit;
    fit.model = "free";
    fit.A_est = x(0);
    fit.B_est = x(1);
    fit.p_est = x(2);
    fit.weighted_sse = sse;
    fit.iterations = iter;
    return fit;
}

namespace {

double percentile(const std::vector<double>& sorted, double q)
{
    const double h = q * double(sorted.size() - 1);
    const std::size_t lo = std::size_t(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - double(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

ConfidenceResult confidence_interval(const ExperimentSpec& spec, int K, double quantile)
{
    if (K < 10)
        throw ValidationError("confidence_interval: K must be >= 10");
    if (!(quantile > 0.0 && quantile < 1.0))
        throw ValidationError("confidence_interval: quantile must lie in (0, 1)");

    const GroupTable group = build_group(spec.group);
    const StateVec rho = spec_state(spec);
    const ObsVec obs = spec_observable(spec);
    const std::vector<int> m_list = spec.m_list.empty() ? default_m_list() : spec.m_list;

    ConfidenceResult out;
    out.p_ests.reserve(std::size_t(K));
    out.p_solved.reserve(std::size_t(K));
    for (int k = 0; k < K; ++k) {
        const GateSet gs =
            build_gateset(group, spec.noise, derive_seed(spec.seed, kCiNoiseTag, std::uint64_t(k)));
        const DecayDataset ds = run_experiment(gs, m_list, spec.n_seq, rho, obs,
                                               derive_seed(spec.seed, kCiSequenceTag,
                                                           std::uint64_t(k)));
        try {
            const FitResult fit = spec.fit_model == FitModel::FixedSpam
                                      ? fit_fixed_spam(ds, spec.min_m)
                                      : fit_free(ds, spec.min_m);
            out.p_ests.push_back(fit.p_est);
        } catch (const Error& e) {
            throw NumericalError("confidence_interval: experiment " + std::to_string(k)
                                 + " failed: " + e.what());
        }
        out.p_solved.push_back(solve_LR(gs).p);
    }
    std::sort(out.p_ests.begin(), out.p_ests.end());
    out.lo = percentile(out.p_ests, (1.0 - quantile) / 2.0);
    out.hi = percentile(out.p_ests, (1.0 + quantile) / 2.0);
    return out;
}

SuperOp average_noise(const GateSet& gs)
{
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(gs.noisy[0].mat.rows(), gs.noisy[0].mat.cols());
    for (int i = 0; i < gs.group.order; ++i)
        acc += gs.group.ideal[std::size_t(i)].mat.transpose() * gs.noisy[std::size_t(i)].mat;
    return SuperOp(gs.group.ideal.front().dim, acc / double(gs.group.order));
}

GammaReport first_order_gamma(const GateSet& gs, double f_m_minus_B)
{
    if (gs.group.ideal.front().dim != 2)
        throw ValidationError("first_order_gamma: implemented for d = 2 only");
    const SuperOp e = average_noise(gs);
    double gamma = 0.0;
    for (int i = 0; i < gs.group.order; ++i) {
        const SuperOp dev(2, Eigen::MatrixXd(gs.group.ideal[std::size_t(i)].mat.transpose()
                                                 * gs.noisy[std::size_t(i)].mat
                                             - e.mat));
        gamma += induced_1to1_norm(dev);
    }
    GammaReport rep;
    rep.gamma = gamma / double(gs.group.order);
    rep.r_of_E = infidelity(e);
    rep.f_m_minus_B = f_m_minus_B;
    rep.systematic_dr = rep.gamma / (2.0 * f_m_minus_B);
    return rep;
}

double kth_order_bound(const GammaReport& rep, int m, int k)
{
    if (k < 0 || m < 0 || k > m + 1)
        throw ValidationError("kth_order_bound: need 0 <= k <= m + 1");
    double binom = 1.0;
    for (int j = 1; j <= k; ++j)
        binom *= double(m + 2 - j) / double(j);
    return binom * std::pow(rep.gamma, k);
}

CounterexampleAnalytics counterexample_analytics(double nu, double theta)
{
    if (!(nu > 0.0 && nu <= 1.0))
        throw ValidationError("counterexample_analytics: nu must lie in (0, 1]");
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2))
        throw ValidationError("counterexample_analytics: theta must lie in [0, pi/2)");
    CounterexampleAnalytics out;
    out.gamma = nu * std::abs(std::sin(theta / 2.0));
    out.r_of_E = (3.0 - 2.0 * nu - nu * std::cos(theta)) / 6.0;
    out.systematic_dr = out.gamma / (2.0 * 0.5);
    out.ratio = out.r_of_E > 0.0 ? out.systematic_dr / out.r_of_E : 0.0;
    return out;
}

} // namespace gdrb
