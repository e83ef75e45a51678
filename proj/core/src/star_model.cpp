#include "lofit/star_model.hpp"

#include "lofit/errors.hpp"
#include "lofit/statistics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace lofit {

namespace {

constexpr double kBadObjective = -1e18;
constexpr double kRhoBox = 0.999;

void check_model_invariants(const StarSeriesModel& model) {
    if (model.n == 0) throw domain_error("star model needs n >= 1");
    if (!(std::abs(model.rho) < 1.0)) throw domain_error("star model needs |rho| < 1");
    if (!(model.sigma_z2 >= 0.0)) throw domain_error("star model needs sigma_z2 >= 0");
    if (model.degree < 0) throw domain_error("star model needs degree >= 0");
}

/// Measurement-error variance e^{v0 + v1 j}; the v0 = v1 = -inf "measurement
/// error off" limit maps cleanly to zero (avoiding the -inf * 0 indeterminate
/// at j = 0).
double meas_var(double v0, double v1, double j) {
    return std::exp(v0 + (j == 0.0 ? 0.0 : v1 * j));
}

}  // namespace

Eigen::VectorXd StarSeriesModel::mean() const {
    if (beta.size() != degree + 1)
        throw usage_error("star model: beta must have degree + 1 coefficients");
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t j = 1; j <= n; ++j) {
        double term = 0.0;
        double power = 1.0;
        for (int k = 0; k <= degree; ++k) {
            term += beta(k) * power;
            power *= static_cast<double>(j);
        }
        mu(static_cast<Eigen::Index>(j - 1)) = term;
    }
    return mu;
}

Eigen::MatrixXd build_covariance(const StarSeriesModel& model) {
    check_model_invariants(model);
    const Eigen::Index n = static_cast<Eigen::Index>(model.n);
    const double ar_var = model.sigma_z2 == 0.0 ? 0.0 : model.sigma_z2 / (1.0 - model.rho * model.rho);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double ja = static_cast<double>(a + 1);
        cov(a, a) = ar_var + meas_var(model.v0, model.v1, ja) + meas_var(model.v0, model.v1, ja - 1.0);
        double rho_pow = 1.0;
        for (Eigen::Index b = a + 1; b < n; ++b) {
            rho_pow *= model.rho;
            double value = ar_var * rho_pow;
            if (b == a + 1) value -= meas_var(model.v0, model.v1, ja);
            cov(a, b) = value;
            cov(b, a) = value;
        }
    }
    return cov;
}

double gaussian_loglik(const Eigen::VectorXd& y, const StarSeriesModel& model) {
    if (static_cast<std::size_t>(y.size()) != model.n)
        throw usage_error("gaussian_loglik: series length does not match the model");
    const Eigen::MatrixXd cov = build_covariance(model);
    const Eigen::VectorXd resid = y - model.mean();
    const Eigen::Index n = y.size();

    for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
        Eigen::MatrixXd work = cov;
        if (jitter > 0.0) work.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() != Eigen::Success) continue;
        const Eigen::VectorXd white = llt.matrixL().solve(resid);
        const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        return -0.5 * static_cast<double>(n) * std::log(2.0 * std::acos(-1.0)) - 0.5 * logdet -
               0.5 * white.squaredNorm();
    }
    throw numeric_error("gaussian_loglik: covariance not positive definite within 1e-8 jitter");
}

namespace {

// ---------------------------------------------------------------------------
// Profiled likelihood machinery.
//
// Write the covariance as e^{v0} C with C = s R(rho)/(1-rho^2) + D(v1), where
// R is the unit-variance AR(1) correlation, D the differenced measurement
// structure at unit scale, and s = sigma_z2 e^{-v0}. Both the trend
// coefficients (by GLS) and v0 (by a closed form) profile out, leaving a
// 3-parameter surface over (rho, s, v1).
//
// C is exactly the covariance of the 3-dimensional state-space recursion
//   I_j = rho I_{j-1} + Z_j,      Z_j ~ N(0, s)
//   Y_j = I_j + e_j - e_{j-1},    e_j ~ N(0, exp(v1 j))
// so the innovations decomposition of a Kalman filter evaluates the GLS
// pieces in O(n) instead of a dense O(n^3) factorization. fit_star leans on
// that; gaussian_loglik above stays dense, and the two are tied together by
// tests asserting they agree at the optimum.
// ---------------------------------------------------------------------------

struct ProfileResult {
    double loglik = kBadObjective;  // profiled log-likelihood
    double v0 = 0.0;
    Eigen::VectorXd beta_orth;      // coefficients on the orthonormal columns
};

/// One pass of the innovations filter for the observation vector and every
/// design column simultaneously. Returns false when the parameters produce a
/// numerically unusable filter (overflow, non-positive innovation variance).
bool profile_loglik(const Eigen::VectorXd& y, const Eigen::MatrixXd& design, double rho, double s,
                    double v1, ProfileResult& out) {
    const Eigen::Index n = y.size();
    const Eigen::Index p = design.cols();
    if (!std::isfinite(rho) || !std::isfinite(s) || !std::isfinite(v1) || s < 0.0) return false;
    if (std::abs(v1) * static_cast<double>(n) > 600.0) return false;

    const double ar_var = s == 0.0 ? 0.0 : s / (1.0 - rho * rho);
    if (!std::isfinite(ar_var)) return false;

    // State (I_j, e_j, e_{j-1}); observation row H = [1, 1, -1].
    Eigen::Matrix3d P;
    P.setZero();
    P(0, 0) = ar_var;
    P(1, 1) = std::exp(v1);
    P(2, 2) = 1.0;

    Eigen::MatrixXd state = Eigen::MatrixXd::Zero(3, p + 1);
    Eigen::VectorXd white_y(n);
    Eigen::MatrixXd white_x(n, p);
    Eigen::RowVectorXd obs(p + 1);
    double logdet = 0.0;

    for (Eigen::Index j = 0; j < n; ++j) {
        const double f = P(0, 0) + P(1, 1) + P(2, 2) + 2.0 * (P(0, 1) - P(0, 2) - P(1, 2));
        if (!(f > 1e-300) || !std::isfinite(f)) return false;
        logdet += std::log(f);

        obs(0) = y(j);
        obs.tail(p) = design.row(j);
        const Eigen::RowVectorXd innov = obs - (state.row(0) + state.row(1) - state.row(2));
        const double root = std::sqrt(f);
        white_y(j) = innov(0) / root;
        white_x.row(j) = innov.tail(p) / root;

        const Eigen::Vector3d hp = P.col(0) + P.col(1) - P.col(2);
        state.noalias() += hp * (innov / f);
        P.noalias() -= (hp * hp.transpose()) / f;

        if (j + 1 < n) {
            // Predict through the sparse transition (a,b,c) -> (rho a, new, b).
            state.row(2) = state.row(1);
            state.row(0) *= rho;
            state.row(1).setZero();
            const double p00 = P(0, 0), p01 = P(0, 1), p11 = P(1, 1);
            P.setZero();
            P(0, 0) = rho * rho * p00 + s;
            P(0, 2) = rho * p01;
            P(2, 0) = P(0, 2);
            P(2, 2) = p11;
            P(1, 1) = std::exp(v1 * static_cast<double>(j + 2));
        }
    }

    out.beta_orth = white_x.householderQr().solve(white_y);
    const double rss = (white_y - white_x * out.beta_orth).squaredNorm();
    if (!(rss > 0.0) || !std::isfinite(rss)) return false;

    const double nn = static_cast<double>(n);
    out.v0 = std::log(rss / nn);
    out.loglik = -0.5 * nn * (std::log(2.0 * std::acos(-1.0)) + 1.0 + out.v0) - 0.5 * logdet;
    return std::isfinite(out.loglik);
}

/// Orthonormal polynomial design over the scaled index t = j/n, plus the data
/// needed to translate fitted coefficients back to raw monomials in j.
struct TrendDesign {
    Eigen::MatrixXd q;  // n x (degree+1), orthonormal columns
    Eigen::MatrixXd r;  // (degree+1) square, X_monomial(t) = q r
    std::size_t n = 0;
    int degree = 0;
};

TrendDesign make_trend_design(std::size_t n, int degree) {
    TrendDesign design;
    design.n = n;
    design.degree = degree;
    Eigen::MatrixXd mono(static_cast<Eigen::Index>(n), degree + 1);
    for (std::size_t j = 1; j <= n; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n);
        double power = 1.0;
        for (int k = 0; k <= degree; ++k) {
            mono(static_cast<Eigen::Index>(j - 1), k) = power;
            power *= t;
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(mono);
    design.q = qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), degree + 1);
    design.r = qr.matrixQR().topLeftCorner(degree + 1, degree + 1).triangularView<Eigen::Upper>();
    return design;
}

Eigen::VectorXd monomial_beta(const TrendDesign& design, const Eigen::VectorXd& beta_orth) {
    // q beta_orth = mono(t) beta_t with beta_t = r^{-1} beta_orth; monomials in
    // the raw index j = n t then pick up a 1/n^k rescale per power.
    Eigen::VectorXd beta_t =
        design.r.triangularView<Eigen::Upper>().solve(beta_orth);
    double scale = 1.0;
    for (int k = 0; k <= design.degree; ++k) {
        beta_t(k) *= scale;
        scale /= static_cast<double>(design.n);
    }
    return beta_t;
}

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = kBadObjective;  // maximized objective
    std::size_t evaluations = 0;
};

/// Maximizes fn by the standard simplex moves (reflection/expansion/
/// contraction/shrink) from a single start; dimension comes from x0.
NelderMeadResult nelder_mead_max(const std::function<double(const Eigen::VectorXd&)>& fn,
                                 const Eigen::VectorXd& x0, const Eigen::VectorXd& steps,
                                 int max_iter = 400) {
    const int d = static_cast<int>(x0.size());
    NelderMeadResult result;
    std::vector<Eigen::VectorXd> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (int i = 1; i <= d; ++i) xs[i](i - 1) += steps(i - 1);
    for (int i = 0; i <= d; ++i) {
        fs[i] = -fn(xs[i]);
        ++result.evaluations;
    }

    auto order = [&]() {
        std::vector<int> idx(d + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<Eigen::VectorXd> nxs(d + 1);
        std::vector<double> nfs(d + 1);
        for (int i = 0; i <= d; ++i) {
            nxs[i] = xs[idx[i]];
            nfs[i] = fs[idx[i]];
        }
        xs.swap(nxs);
        fs.swap(nfs);
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        order();
        double diameter = 0.0;
        for (int i = 1; i <= d; ++i) diameter = std::max(diameter, (xs[i] - xs[0]).norm());
        if (std::abs(fs[d] - fs[0]) < 1e-10 && diameter < 1e-8) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
        for (int i = 0; i < d; ++i) centroid += xs[i];
        centroid /= static_cast<double>(d);

        const Eigen::VectorXd reflected = centroid + (centroid - xs[d]);
        const double fr = -fn(reflected);
        ++result.evaluations;
        if (fr < fs[0]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[d]);
            const double fe = -fn(expanded);
            ++result.evaluations;
            if (fe < fr) {
                xs[d] = expanded;
                fs[d] = fe;
            } else {
                xs[d] = reflected;
                fs[d] = fr;
            }
            continue;
        }
        if (fr < fs[d - 1]) {
            xs[d] = reflected;
            fs[d] = fr;
            continue;
        }
        const Eigen::VectorXd contracted =
            fr < fs[d] ? centroid + 0.5 * (reflected - centroid) : centroid + 0.5 * (xs[d] - centroid);
        const double fc = -fn(contracted);
        ++result.evaluations;
        if (fc < std::min(fr, fs[d])) {
            xs[d] = contracted;
            fs[d] = fc;
            continue;
        }
        for (int i = 1; i <= d; ++i) {
            xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
            fs[i] = -fn(xs[i]);
            ++result.evaluations;
        }
    }
    order();
    result.x = xs[0];
    result.value = -fs[0];
    return result;
}

/// Raw optimizer coordinates of a fitted covariance, kept so ladder fits can
/// warm-start the next degree.
struct CovOptimum {
    bool boundary = false;  // sigma_z2 pinned at zero
    double u = 0.0;         // rho = kRhoBox * tanh(u)
    double log_s = 0.0;
    double v1 = 0.0;
    double loglik = kBadObjective;
};

struct StartPoint {
    bool boundary = false;
    double u = 0.0;
    double log_s = 0.0;
    double v1 = 0.0;
};

std::vector<StartPoint> default_start_grid() {
    std::vector<StartPoint> starts;
    for (double rho0 : {-0.5, 0.0, 0.5}) {
        for (double v1_0 : {0.0, -0.002}) {
            StartPoint sp;
            sp.u = std::atanh(rho0 / kRhoBox);
            sp.log_s = 0.0;  // sigma_z2 = s_y^2/2 with v0 = log(s_y^2/2)
            sp.v1 = v1_0;
            starts.push_back(sp);
        }
    }
    for (double v1_0 : {0.0, -0.002}) {
        StartPoint sp;
        sp.boundary = true;
        sp.v1 = v1_0;
        starts.push_back(sp);
    }
    return starts;
}

struct InternalFit {
    CovOptimum opt;
    ProfileResult profile;
    std::size_t evaluations = 0;
};

InternalFit fit_with_starts(const Eigen::VectorXd& y, const TrendDesign& design,
                            const std::vector<StartPoint>& starts) {
    InternalFit best;

    auto interior_objective = [&](const Eigen::VectorXd& theta) {
        ProfileResult pr;
        const double rho = kRhoBox * std::tanh(theta(0));
        const double s = theta(1) > 600.0 ? std::numeric_limits<double>::infinity()
                                          : std::exp(theta(1));
        if (!profile_loglik(y, design.q, rho, s, theta(2), pr)) return kBadObjective;
        return pr.loglik;
    };
    auto boundary_objective = [&](const Eigen::VectorXd& theta) {
        ProfileResult pr;
        if (!profile_loglik(y, design.q, 0.0, 0.0, theta(0), pr)) return kBadObjective;
        return pr.loglik;
    };

    for (const StartPoint& sp : starts) {
        CovOptimum candidate;
        NelderMeadResult nm;
        if (sp.boundary) {
            Eigen::VectorXd x0(1), steps(1);
            x0 << sp.v1;
            steps << 0.01;
            nm = nelder_mead_max(boundary_objective, x0, steps);
            candidate.boundary = true;
            candidate.v1 = nm.x(0);
        } else {
            Eigen::VectorXd x0(3), steps(3);
            x0 << sp.u, sp.log_s, sp.v1;
            steps << 0.25, 0.5, 0.01;
            nm = nelder_mead_max(interior_objective, x0, steps);
            candidate.u = nm.x(0);
            candidate.log_s = nm.x(1);
            candidate.v1 = nm.x(2);
        }
        candidate.loglik = nm.value;
        best.evaluations += nm.evaluations;

        // Prefer an exact boundary representation on ties: the interior
        // surface approaches but never attains sigma_z2 = 0.
        const bool better = candidate.loglik > best.opt.loglik + 1e-9 ||
                            (candidate.boundary && !best.opt.boundary &&
                             candidate.loglik >= best.opt.loglik - 1e-9);
        if (better) best.opt = candidate;
    }

    if (best.opt.loglik <= kBadObjective / 2) {
        throw convergence_error("star model fit: all " + std::to_string(starts.size()) +
                                " optimizer starts failed to produce a finite likelihood");
    }

    // A vanishing interior intrinsic variance is the boundary in disguise:
    // re-polish the one-parameter boundary profile and adopt it unless the
    // interior point is genuinely better.
    if (!best.opt.boundary) {
        ProfileResult pr;
        const double s = std::exp(best.opt.log_s);
        if (profile_loglik(y, design.q, 0.0, 0.0, best.opt.v1, pr)) {
            const double sigma_z2 = s * std::exp(pr.v0);
            if (sigma_z2 < 1e-10) {
                Eigen::VectorXd x0(1), steps(1);
                x0 << best.opt.v1;
                steps << 0.005;
                const auto nm = nelder_mead_max(boundary_objective, x0, steps);
                best.evaluations += nm.evaluations;
                if (nm.value >= best.opt.loglik - 1e-9) {
                    best.opt = CovOptimum{true, 0.0, 0.0, nm.x(0), nm.value};
                }
            }
        }
    }

    const double rho = best.opt.boundary ? 0.0 : kRhoBox * std::tanh(best.opt.u);
    const double s = best.opt.boundary ? 0.0 : std::exp(best.opt.log_s);
    if (!profile_loglik(y, design.q, rho, s, best.opt.v1, best.profile)) {
        throw numeric_error("star model fit: profile evaluation failed at the optimum");
    }
    best.opt.loglik = best.profile.loglik;
    return best;
}

FittedStar assemble_fit(const InternalFit& internal, const TrendDesign& design) {
    FittedStar fit;
    fit.model.degree = design.degree;
    fit.model.n = design.n;
    fit.model.beta = monomial_beta(design, internal.profile.beta_orth);
    fit.model.rho = internal.opt.boundary ? 0.0 : kRhoBox * std::tanh(internal.opt.u);
    fit.model.v0 = internal.profile.v0;
    fit.model.v1 = internal.opt.v1;
    fit.model.sigma_z2 =
        internal.opt.boundary ? 0.0 : std::exp(internal.opt.log_s + internal.profile.v0);
    fit.max_loglik = internal.opt.loglik;
    fit.boundary_sigma = internal.opt.boundary;
    fit.evaluations = internal.evaluations;
    return fit;
}

}  // namespace

FittedStar fit_star(const Eigen::VectorXd& y, int degree) {
    if (degree < 0) throw usage_error("fit_star needs degree >= 0");
    const std::size_t n = static_cast<std::size_t>(y.size());
    if (n <= static_cast<std::size_t>(degree) + 5)
        throw usage_error("fit_star needs n > degree + 5");
    const TrendDesign design = make_trend_design(n, degree);
    return assemble_fit(fit_with_starts(y, design, default_start_grid()), design);
}

TrendSelection select_trend(const Eigen::VectorXd& y, int max_degree) {
    if (max_degree < 1) throw usage_error("select_trend needs max_degree >= 1");
    const std::size_t n = static_cast<std::size_t>(y.size());
    if (n <= static_cast<std::size_t>(max_degree) + 6)
        throw usage_error("select_trend needs n > max_degree + 6");

    TrendSelection selection;
    selection.n = n;
    const double log_n = std::log(static_cast<double>(n));

    CovOptimum previous;
    double loglik0 = 0.0;
    for (int degree = 0; degree <= max_degree; ++degree) {
        const TrendDesign design = make_trend_design(n, degree);
        InternalFit internal;
        if (degree == 0) {
            internal = fit_with_starts(y, design, default_start_grid());
        } else {
            // Warm-start from the previous rung (interior point if there was
            // one, plus the boundary path), falling back to the full grid if
            // the nested-likelihood ordering regresses.
            std::vector<StartPoint> starts;
            if (!previous.boundary) {
                starts.push_back({false, previous.u, previous.log_s, previous.v1});
            } else {
                starts.push_back({false, 0.0, 0.0, previous.v1});
            }
            starts.push_back({true, 0.0, 0.0, previous.v1});
            internal = fit_with_starts(y, design, starts);
            if (internal.opt.loglik < previous.loglik - 1e-6) {
                InternalFit refit = fit_with_starts(y, design, default_start_grid());
                refit.evaluations += internal.evaluations;
                if (refit.opt.loglik > internal.opt.loglik) internal = refit;
            }
        }
        previous = internal.opt;
        if (degree == 0) loglik0 = internal.opt.loglik;

        FittedStar fit = assemble_fit(internal, design);
        TrendDegreeFit row;
        row.degree = degree;
        row.loglik = fit.max_loglik;
        row.lr = 2.0 * (fit.max_loglik - loglik0);
        row.bic = 0.5 * row.lr - 0.5 * static_cast<double>(degree) * log_n;
        row.boundary_sigma = fit.boundary_sigma;
        selection.table.push_back(row);
        selection.fits.push_back(std::move(fit));
    }

    selection.selected_degree = 0;
    for (int degree = 1; degree <= max_degree; ++degree) {
        if (selection.table[degree].bic > selection.table[selection.selected_degree].bic)
            selection.selected_degree = degree;
    }

    std::vector<double> lr(selection.table.size() - 1);
    std::vector<int> dims(lr.size());
    for (std::size_t j = 1; j < selection.table.size(); ++j) {
        lr[j - 1] = selection.table[j].lr;
        dims[j - 1] = static_cast<int>(j);
    }
    selection.pi_bic = pi_bic_ladder(lr, dims, n);
    selection.pi_singleton = pi_singleton_ladder(lr, n);
    return selection;
}

Eigen::VectorXd simulate_null_star(double v0, double v1, std::size_t n, rng::Stream& stream) {
    if (n < 2) throw usage_error("simulate_null_star needs n >= 2");
    Eigen::VectorXd eps(static_cast<Eigen::Index>(n) + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        eps(static_cast<Eigen::Index>(j)) =
            std::sqrt(meas_var(v0, v1, static_cast<double>(j))) * stream.normal();
    }
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t j = 1; j <= n; ++j) {
        y(static_cast<Eigen::Index>(j - 1)) =
            eps(static_cast<Eigen::Index>(j)) - eps(static_cast<Eigen::Index>(j - 1));
    }
    return y;
}

Eigen::VectorXd simulate_null_star(double v0, double v1, std::size_t n, std::uint64_t seed) {
    rng::Stream stream(seed, rng::streams::kStarNull, 0);
    return simulate_null_star(v0, v1, n, stream);
}

Eigen::VectorXd read_star_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open series file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw usage_error("series file is empty: " + path);

    std::vector<double> values;
    double prev_index = -std::numeric_limits<double>::infinity();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string index_field, value_field, extra;
        if (!std::getline(row, index_field, ',') || !std::getline(row, value_field, ',')) {
            throw usage_error("series file line " + std::to_string(line_no) +
                              ": expected two comma-separated columns");
        }
        if (std::getline(row, extra, ',')) {
            throw usage_error("series file line " + std::to_string(line_no) +
                              ": expected exactly two columns");
        }
        std::size_t pos = 0;
        double index = 0.0, value = 0.0;
        try {
            index = std::stod(index_field, &pos);
            if (pos != index_field.size()) throw std::invalid_argument(index_field);
            value = std::stod(value_field, &pos);
            if (pos != value_field.size()) throw std::invalid_argument(value_field);
        } catch (const std::exception&) {
            throw usage_error("series file line " + std::to_string(line_no) +
                              ": non-numeric field");
        }
        if (!(index > prev_index)) {
            throw usage_error("series file line " + std::to_string(line_no) +
                              ": indices must be strictly increasing");
        }
        prev_index = index;
        values.push_back(value);
    }
    if (values.size() < 2) throw usage_error("series file needs at least two observations");
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_star_series_csv(const std::string& path, const Eigen::VectorXd& y) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot write series file: " + path);
    out << "j,y\n";
    char buffer[64];
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        std::snprintf(buffer, sizeof buffer, "%lld,%.17g\n",
                      static_cast<long long>(j + 1), y(j));
        out << buffer;
    }
}

}  // namespace lofit
