#pragma once

// Adapted two-sample KS test, Pearson correlation matrices and PCA.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "format.hpp"

namespace lingnet {

struct KsResult {
    double d_stat = 0;
    std::size_t n = 0, n2 = 0;
    double c_prime = 0;
    std::optional<double> reject_at;  // smallest tabulated alpha with c(alpha) < c'
};

struct KsLevel {
    double alpha, c;
};

inline constexpr KsLevel kKsTable[] = {{0.1, 1.22},   {0.05, 1.36},  {0.025, 1.48},
                                       {0.01, 1.63},  {0.005, 1.73}, {0.001, 1.95}};

inline double ks_critical(double alpha) {
    for (const auto& l : kKsTable)
        if (l.alpha == alpha) return l.c;
    throw std::invalid_argument("alpha not tabulated");
}

// Above this the two distributions are taken to differ.
inline constexpr double ks_reference_threshold() { return 1.7; }

inline double ks_scale(std::size_t n, std::size_t m) {
    return std::sqrt(double(n + m) / (double(n) * double(m)));
}

inline KsResult ks_adapted(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw EmptySample();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size(), m = b.size();
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < n || j < m) {
        double x = i == n ? b[j] : (j == m ? a[i] : std::min(a[i], b[j]));
        while (i < n && a[i] <= x) ++i;
        while (j < m && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / double(n) - double(j) / double(m)));
    }
    KsResult r;
    r.d_stat = d;
    r.n = n;
    r.n2 = m;
    r.c_prime = d / ks_scale(n, m);
    for (auto it = std::rbegin(kKsTable); it != std::rend(kKsTable); ++it)
        if (it->c < r.c_prime) {
            r.reject_at = it->alpha;
            break;
        }
    return r;
}

// Pairwise-complete Pearson r; absent for n < 2 or a constant variable.
inline Measure pearson(const std::vector<double>& x, const std::vector<double>& y, std::size_t* n_eff = nullptr) {
    std::vector<std::pair<double, double>> p;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (!std::isnan(x[i]) && !std::isnan(y[i])) p.emplace_back(x[i], y[i]);
    if (n_eff) *n_eff = p.size();
    if (p.size() < 2) return Measure::absent();
    double n = double(p.size()), mx = 0, my = 0;
    for (auto& [a, b] : p) mx += a;
    mx /= n;
    for (auto& [a, b] : p) my += b;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (auto& [a, b] : p) sxy += (a - mx) * (b - my);
    for (auto& [a, b] : p) sxx += (a - mx) * (a - mx);
    for (auto& [a, b] : p) syy += (b - my) * (b - my);
    if (sxx == 0 || syy == 0) return Measure::absent();
    return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), true};
}

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<Measure>> r;
    std::vector<std::vector<std::size_t>> n;
};

// columns[k] holds feature k over all rows; NaN marks an absent value.
inline CorrelationMatrix correlation_matrix(const std::vector<std::string>& names,
                                            const std::vector<std::vector<double>>& columns) {
    std::size_t rows = columns.empty() ? 0 : columns[0].size();
    if (rows < 2) throw TooFewRows();
    const std::size_t k = names.size();
    CorrelationMatrix c;
    c.names = names;
    c.r.assign(k, std::vector<Measure>(k, Measure::absent()));
    c.n.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            c.r[i][j] = c.r[j][i] = pearson(columns[i], columns[j], &c.n[i][j]);
            c.n[j][i] = c.n[i][j];
        }
    return c;
}

enum class PcaMode { correlation, covariance };

struct PcaResult {
    std::vector<std::string> features;  // kept columns
    std::vector<std::string> dropped;   // constant columns
    std::size_t rows_used = 0;
    Eigen::MatrixXd matrix;             // the decomposed correlation/covariance matrix
    std::vector<double> eigenvalues;    // descending
    std::vector<double> lambda;         // percent of total dispersion
    std::vector<std::vector<double>> loadings;  // loadings[component][feature], unit length
    std::vector<bool> degenerate;       // zero-dispersion component, loadings arbitrary
};

// Rows with any absent value are dropped; constant columns are dropped and listed.
inline PcaResult pca(const std::vector<std::string>& names, const std::vector<std::vector<double>>& rows,
                     PcaMode mode = PcaMode::correlation) {
    std::vector<const std::vector<double>*> use;
    for (const auto& r : rows)
        if (std::none_of(r.begin(), r.end(), [](double v) { return std::isnan(v); })) use.push_back(&r);
    if (use.size() < 2) throw TooFewRows();
    const std::size_t n = use.size(), k = names.size();
    std::vector<double> mu(k, 0), sd(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        for (auto* r : use) mu[j] += (*r)[j];
        mu[j] /= double(n);
        for (auto* r : use) sd[j] += ((*r)[j] - mu[j]) * ((*r)[j] - mu[j]);
        sd[j] = std::sqrt(sd[j] / double(n));
    }
    PcaResult res;
    res.rows_used = n;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < k; ++j) {
        if (sd[j] > 1e-12 * std::max(std::abs(mu[j]), 1.0)) {
            keep.push_back(j);
            res.features.push_back(names[j]);
        } else {
            res.dropped.push_back(names[j]);
        }
    }
    if (keep.empty()) throw DegenerateMatrix();
    const std::size_t p = keep.size();
    Eigen::MatrixXd x(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double v = (*use[i])[keep[j]] - mu[keep[j]];
            x(Eigen::Index(i), Eigen::Index(j)) = mode == PcaMode::correlation ? v / sd[keep[j]] : v;
        }
    res.matrix = x.transpose() * x / (mode == PcaMode::correlation ? double(n) : double(n - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(res.matrix);
    if (es.info() != Eigen::Success) throw DegenerateMatrix();
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ev(Eigen::Index(a)) > ev(Eigen::Index(b));
    });
    double total = 0;
    for (std::size_t c = 0; c < p; ++c) total += std::max(ev(Eigen::Index(c)), 0.0);
    for (std::size_t c : order) {
        double e = ev(Eigen::Index(c));
        double l = total > 0 ? 100 * std::max(e, 0.0) / total : 0;
        std::vector<double> v(p);
        double mx = 0;
        for (std::size_t j = 0; j < p; ++j) {
            v[j] = es.eigenvectors()(Eigen::Index(j), Eigen::Index(c));
            mx = std::max(mx, std::abs(v[j]));
        }
        // Make the first largest-magnitude entry positive.
        for (double a : v)
            if (std::abs(a) >= mx - 1e-9) {
                if (a < 0)
                    for (auto& y : v) y = -y;
                break;
            }
        res.eigenvalues.push_back(e);
        res.lambda.push_back(l);
        res.loadings.push_back(std::move(v));
        res.degenerate.push_back(l < 1e-9);
    }
    return res;
}

// Entries with |v| <= threshold are blanked; degenerate components are blank.
inline std::vector<std::vector<std::optional<double>>> filter_loadings(const PcaResult& r, double threshold = 0.05) {
    if (!(threshold >= 0)) throw std::invalid_argument("threshold must be non-negative");
    std::vector<std::vector<std::optional<double>>> out;
    for (std::size_t c = 0; c < r.loadings.size(); ++c) {
        std::vector<std::optional<double>> row(r.loadings[c].size());
        if (!r.degenerate[c])
            for (std::size_t j = 0; j < row.size(); ++j)
                if (std::abs(r.loadings[c][j]) > threshold) row[j] = r.loadings[c][j];
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace lingnet
