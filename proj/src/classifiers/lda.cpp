#include <cmath>
#include <stdexcept>

#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

namespace {

class LdaModel final : public Model {
public:
    LdaModel(std::vector<double> w, double bias) : w_(std::move(w)), bias_(bias) {}

    Label predict_row(std::span<const double> x) const override {
        return dot(w_, x) + bias_ >= 0.0 ? Label::positive : Label::negative;
    }

private:
    std::vector<double> w_;
    double bias_;
};

/// In-place Cholesky factor of a symmetric matrix (lower triangle). False if not positive definite.
bool cholesky(Matrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
        if (!(diag > 0.0)) return false;
        a(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / a(j, j);
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const Matrix& l, std::vector<double> b) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
        b[i] /= l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
        b[i] /= l(i, i);
    }
    return b;
}

}  // namespace

ModelPtr fit_lda(const ClassifierConfig& cfg, const Dataset& train) {
    require_both_classes(train, "lda");
    double ridge = cfg.get("ridge");
    if (ridge < 0.0) throw ConfigError("lda: ridge must be non-negative");
    const auto& x = train.features();
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();

    std::vector<double> mean[2] = {std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    std::size_t count[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const int c = to_int(train.labels()[i]);
        ++count[c];
        for (std::size_t j = 0; j < d; ++j) mean[c][j] += x(i, j);
    }
    for (int c = 0; c < 2; ++c) {
        for (auto& m : mean[c]) m /= static_cast<double>(count[c]);
    }

    Matrix cov(d, d);
    std::vector<double> centered(d);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = to_int(train.labels()[i]);
        for (std::size_t j = 0; j < d; ++j) centered[j] = x(i, j) - mean[c][j];
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b <= a; ++b) cov(a, b) += centered[a] * centered[b];
        }
    }
    const double dof = n > 2 ? static_cast<double>(n - 2) : static_cast<double>(n);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            cov(a, b) /= dof;
            cov(b, a) = cov(a, b);
        }
    }

    // Escalate the ridge until the factorization succeeds (collinear columns).
    Matrix chol;
    for (int attempt = 0;; ++attempt) {
        chol = cov;
        for (std::size_t j = 0; j < d; ++j) chol(j, j) += ridge;
        if (cholesky(chol)) break;
        if (attempt > 20) throw std::runtime_error("lda: covariance is not positive definite");
        ridge = ridge > 0.0 ? ridge * 10.0 : 1e-12;
    }

    std::vector<double> diff(d), sum(d);
    for (std::size_t j = 0; j < d; ++j) {
        diff[j] = mean[1][j] - mean[0][j];
        sum[j] = mean[1][j] + mean[0][j];
    }
    auto w = cholesky_solve(chol, diff);
    const double prior_ratio = std::log(static_cast<double>(count[1]) / static_cast<double>(count[0]));
    const double bias = -0.5 * dot(w, sum) + prior_ratio;
    return std::make_shared<LdaModel>(std::move(w), bias);
}

}  // namespace wrapfs::detail
