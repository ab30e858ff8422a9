#include "fcpd/simulation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "fcpd/errors.hpp"

namespace fcpd {

namespace {

void check_matern(const MaternParams& p) {
    if (!(p.sigma2 > 0.0) || !(p.range > 0.0) || !(p.smoothness > 0.0))
        throw DataError("Matern parameters must be positive");
}

// Factor L with L L^T = cov, tolerating eigenvalues down to -1e-8.
Eigen::MatrixXd psd_factor(const CovarianceMatrix& cov) {
    const Eigen::MatrixXd& C = cov.values;
    require(C.rows() == C.cols(), "covariance matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        ((C + C.transpose()) / 2.0).eval());
    require(solver.info() == Eigen::Success, "covariance eigendecomposition failed");
    if (solver.eigenvalues()[0] < -1e-8)
        throw DataError("covariance is not positive semi-definite");
    Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal();
}

Eigen::VectorXd standard_normal(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(m);
    for (int j = 0; j < m; ++j) z[j] = normal(rng);
    return z;
}

Eigen::VectorXd mean_on_grid(int mean_index, const Eigen::VectorXd& grid) {
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(grid.size());
    if (mean_index != 0)
        for (int j = 0; j < grid.size(); ++j) mu[j] = psi(mean_index, grid[j]);
    return mu;
}

}  // namespace

void Scenario::validate() const {
    if (segments.empty()) throw DataError("scenario needs at least one segment");
    if (grid_size < 2) throw DataError("scenario grid needs at least 2 points");
    for (const SegmentSpec& seg : segments) {
        check_matern(seg.matern);
        if (seg.length < 1) throw DataError("segment lengths must be positive");
        if (seg.mean_index < 0 || seg.mean_index > 5)
            throw DataError("segment mean index must be 0 (zero mean) or 1..5");
        if (seg.family == ProcessFamily::student_t && !(seg.df > 0.0))
            throw DataError("student-t degrees of freedom must be positive");
    }
    for (std::size_t i = 1; i < segments.size(); ++i) {
        const SegmentSpec& a = segments[i - 1];
        const SegmentSpec& b = segments[i];
        bool same = a.mean_index == b.mean_index && a.matern.sigma2 == b.matern.sigma2 &&
                    a.matern.range == b.matern.range &&
                    a.matern.smoothness == b.matern.smoothness && a.family == b.family &&
                    (a.family != ProcessFamily::student_t || a.df == b.df);
        if (same)
            throw DataError("adjacent segments must differ (segment " + std::to_string(i) +
                            " repeats its predecessor)");
    }
}

CovarianceMatrix matern_cov(const Eigen::VectorXd& grid, const MaternParams& params) {
    check_matern(params);
    double nu = params.smoothness;
    double r = params.range;
    double sqrt_pi = std::sqrt(std::numbers::pi);
    double prefactor = params.sigma2 * sqrt_pi * std::pow(r, 2.0 * nu) /
                       (std::pow(2.0, nu - 1.0) * std::tgamma(nu + 0.5));
    // Zero-distance limit via K_nu(x) ~ Gamma(nu) 2^{nu-1} x^{-nu}.
    double diagonal =
        params.sigma2 * sqrt_pi * std::pow(r, 2.0 * nu) * std::tgamma(nu) /
        std::tgamma(nu + 0.5);

    int m = static_cast<int>(grid.size());
    Eigen::MatrixXd C(m, m);
    for (int j = 0; j < m; ++j) {
        C(j, j) = diagonal;
        for (int k = j + 1; k < m; ++k) {
            double d = std::abs(grid[k] - grid[j]);
            double value = prefactor * std::pow(d / r, nu) * std::cyl_bessel_k(nu, d / r);
            C(j, k) = value;
            C(k, j) = value;
        }
    }
    return {C};
}

Eigen::VectorXd sample_gp(const Eigen::VectorXd& mean, const CovarianceMatrix& cov,
                          std::mt19937_64& rng) {
    require(mean.size() == cov.values.rows(), "mean length must match covariance");
    return mean + psd_factor(cov) * standard_normal(static_cast<int>(mean.size()), rng);
}

Eigen::VectorXd sample_tp(const Eigen::VectorXd& mean, const CovarianceMatrix& cov, double df,
                          std::mt19937_64& rng) {
    require(mean.size() == cov.values.rows(), "mean length must match covariance");
    if (!(df > 0.0)) throw DataError("degrees of freedom must be positive");
    Eigen::VectorXd gp0 = psd_factor(cov) * standard_normal(static_cast<int>(mean.size()), rng);
    std::chi_squared_distribution<double> chi2(df);
    double u = chi2(rng);
    return mean + gp0 * std::sqrt(df / u);
}

Eigen::VectorXd log_sum_transform(const Eigen::VectorXd& z) {
    Eigen::VectorXd out(z.size());
    for (int j = 0; j < z.size(); ++j) {
        double v = z[j];
        out[j] = v > 30.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
    }
    return out;
}

double psi(int index, double t) {
    switch (index) {
        case 1: return 5.0 * t * t - std::exp(1.0 - 20.0 * t);
        case 2: return 0.5 - 100.0 * (t - 0.1) * (t - 0.3) * (t - 0.5) * (t - 0.9);
        case 3: return psi(2, t) + 0.8 * std::sin(1.0 + 10.0 * std::numbers::pi * t);
        case 4:
            return 1.0 + 3.0 * t * t - 5.0 * t * t * t +
                   0.6 * std::sin(1.0 + 10.0 * std::numbers::pi * t);
        case 5: return 1.0 + 3.0 * t * t - 5.0 * t * t * t;
        default: throw DataError("mean index must be 1..5");
    }
}

std::pair<FunctionalSeries, std::vector<int>> generate_series(const Scenario& scenario) {
    scenario.validate();
    std::mt19937_64 rng(scenario.seed);
    Eigen::VectorXd grid = FunctionalSeries::default_grid(scenario.grid_size);
    int m = scenario.grid_size;

    int n = 0;
    for (const SegmentSpec& seg : scenario.segments) n += seg.length;

    Eigen::MatrixXd X(n, m);
    std::vector<int> changepoints;
    std::normal_distribution<double> normal(0.0, 1.0);

    int row = 0;
    for (std::size_t s = 0; s < scenario.segments.size(); ++s) {
        const SegmentSpec& seg = scenario.segments[s];
        Eigen::MatrixXd L = psd_factor(matern_cov(grid, seg.matern));
        Eigen::VectorXd mu = mean_on_grid(seg.mean_index, grid);
        std::chi_squared_distribution<double> chi2(seg.df);

        Eigen::VectorXd z(m);
        for (int t = 0; t < seg.length; ++t) {
            for (int j = 0; j < m; ++j) z[j] = normal(rng);
            Eigen::VectorXd path = L * z;
            if (seg.family == ProcessFamily::student_t)
                path *= std::sqrt(seg.df / chi2(rng));
            X.row(row++) = (mu + path).transpose();
        }
        if (s + 1 < scenario.segments.size()) changepoints.push_back(row);
    }

    if (scenario.transform == PathTransform::log_sum)
        for (int i = 0; i < n; ++i)
            X.row(i) = log_sum_transform(X.row(i).transpose()).transpose();

    return {FunctionalSeries(std::move(X), grid), changepoints};
}

std::vector<double> variance_grid() {
    return {0.50, 0.66, 0.83, 1.00, 1.16, 1.33, 1.50, 1.66, 1.83, 2.00};
}

std::vector<double> range_grid() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

Scenario sample_scenario(const ScenarioDesign& design, std::mt19937_64& rng) {
    Scenario scenario;
    scenario.transform = design.transform;
    scenario.grid_size = design.grid_size;

    SegmentSpec base;
    base.family = design.family;
    base.df = design.df;
    base.matern = MaternParams{1.0, 0.2, 1.0};

    if (design.kind == ScenarioKind::none) {
        base.length = design.none_length;
        scenario.segments.push_back(base);
        return scenario;
    }

    int M = design.num_changepoints.value_or(design.kind == ScenarioKind::sparse ? 5 : 50);
    if (M < 1) throw DataError("sparse/dense scenarios need at least one changepoint");
    std::pair<int, int> bounds = design.segment_length.value_or(
        design.kind == ScenarioKind::sparse ? std::pair<int, int>{5000, 10000}
                                            : std::pair<int, int>{500, 1000});
    if (bounds.first < 1 || bounds.second < bounds.first)
        throw DataError("segment length bounds must satisfy 1 <= lo <= hi");

    std::uniform_int_distribution<int> length_dist(bounds.first, bounds.second);

    // Walk over the varied parameter's value grid without immediate repeats;
    // everything else stays at the fixed values for that study.
    std::vector<double> values;
    int mean_choices = 5;
    switch (design.varied) {
        case VariedParameter::mean: break;
        case VariedParameter::variance: values = variance_grid(); break;
        case VariedParameter::range: values = range_grid(); break;
    }
    int num_choices = design.varied == VariedParameter::mean
                          ? mean_choices
                          : static_cast<int>(values.size());
    std::uniform_int_distribution<int> pick(0, num_choices - 1);

    int previous = -1;
    for (int s = 0; s <= M; ++s) {
        SegmentSpec seg = base;
        seg.length = length_dist(rng);
        int choice = pick(rng);
        while (choice == previous) choice = pick(rng);
        previous = choice;
        switch (design.varied) {
            case VariedParameter::mean: seg.mean_index = choice + 1; break;
            case VariedParameter::variance: seg.matern.sigma2 = values[choice]; break;
            case VariedParameter::range: seg.matern.range = values[choice]; break;
        }
        scenario.segments.push_back(seg);
    }
    return scenario;
}

SimulationSpec parse_simulation_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid scenario JSON: ") + e.what());
    }

    auto enum_field = [&](const char* key, auto table,
                          auto fallback) -> decltype(fallback) {
        if (!j.contains(key)) return fallback;
        std::string raw = j.at(key).get<std::string>();
        for (const auto& [name, value] : table)
            if (raw == name) return value;
        throw DataError(std::string("unknown value \"") + raw + "\" for " + key);
    };

    SimulationSpec spec;
    try {
        if (!j.contains("kind")) throw DataError("scenario JSON needs \"kind\"");
        spec.design.kind = enum_field(
            "kind",
            std::vector<std::pair<std::string, ScenarioKind>>{
                {"none", ScenarioKind::none},
                {"sparse", ScenarioKind::sparse},
                {"dense", ScenarioKind::dense}},
            ScenarioKind::none);
        if (spec.design.kind != ScenarioKind::none && !j.contains("varied"))
            throw DataError("sparse/dense scenarios need \"varied\"");
        spec.design.varied = enum_field(
            "varied",
            std::vector<std::pair<std::string, VariedParameter>>{
                {"mean", VariedParameter::mean},
                {"variance", VariedParameter::variance},
                {"range", VariedParameter::range}},
            VariedParameter::mean);
        spec.design.family = enum_field(
            "family",
            std::vector<std::pair<std::string, ProcessFamily>>{
                {"gp", ProcessFamily::gaussian}, {"tp", ProcessFamily::student_t}},
            ProcessFamily::gaussian);
        spec.design.transform = enum_field(
            "transform",
            std::vector<std::pair<std::string, PathTransform>>{
                {"identity", PathTransform::identity}, {"log_sum", PathTransform::log_sum}},
            PathTransform::log_sum);

        if (j.contains("grid_size")) spec.design.grid_size = j.at("grid_size").get<int>();
        if (j.contains("df")) spec.design.df = j.at("df").get<double>();
        if (j.contains("none_length"))
            spec.design.none_length = j.at("none_length").get<int>();
        if (j.contains("num_changepoints"))
            spec.design.num_changepoints = j.at("num_changepoints").get<int>();
        if (j.contains("min_length") != j.contains("max_length"))
            throw DataError("min_length and max_length must be given together");
        if (j.contains("min_length"))
            spec.design.segment_length =
                std::pair<int, int>{j.at("min_length").get<int>(),
                                    j.at("max_length").get<int>()};
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("replicates")) spec.replicates = j.at("replicates").get<int>();
        if (spec.replicates < 1) throw DataError("replicates must be at least 1");
        if (spec.design.grid_size < 2) throw DataError("grid_size must be at least 2");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("scenario JSON field error: ") + e.what());
    }
    return spec;
}

}  // namespace fcpd
