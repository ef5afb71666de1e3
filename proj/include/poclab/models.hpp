#ifndef POCLAB_MODELS_HPP
#define POCLAB_MODELS_HPP

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "poclab/kernel.hpp"
#include "poclab/site_space.hpp"

namespace poclab {

// ---------------------------------------------------------------------
// POMM-Ising on a Z^2 window: colors {-1,+1}, footprint {N, W},
// p(s | xi) = exp(b*s*(xi_N + xi_W + h)) / Z.

struct IsingParams {
    double beta = 1.0;
    double h = 0.0;
};

inline Model ising_model(int cols, int rows, const IsingParams& params) {
    if (!(params.beta > 0.0))
        throw domain_error("ising_model: beta must be positive");
    auto space = std::make_shared<SiteSpace>(SiteSpace::z2_window(cols, rows));
    auto kernel = std::make_shared<TabularKernel>(
        space, ColorSpace::spin(),
        "ising(beta=" + std::to_string(params.beta) +
            ",h=" + std::to_string(params.h) + ")");
    // one shared table, rank = idx(xi_N)*2 + idx(xi_W), idx 0 -> -1, 1 -> +1
    std::vector<double> table;
    for (int n = 0; n < 2; ++n)
        for (int w = 0; w < 2; ++w) {
            const double s = (n == 0 ? -1.0 : 1.0) + (w == 0 ? -1.0 : 1.0);
            const double a = 2.0 * params.beta * (s + params.h);
            const double p_plus = 1.0 / (1.0 + std::exp(-a));
            const double p_minus = 1.0 / (1.0 + std::exp(a));
            table.push_back(p_minus);
            table.push_back(p_plus);
        }
    const int tbl = kernel->add_table(std::move(table));
    for (int y = 1; y < rows; ++y)
        for (int x = 1; x < cols; ++x) {
            const SiteId id = *space->site_at(x, y);
            const SiteId north = *space->site_at(x, y - 1);
            const SiteId west = *space->site_at(x - 1, y);
            kernel->set_site(id, {north, west}, tbl);
        }
    kernel->set_homogeneous(true);
    return {space, kernel};
}

// ---------------------------------------------------------------------
// Stavskaya on a Z^2 window: colors {0,1}, footprint {N, W},
// p(1 | xi) = p when xi_N + xi_W > 0, otherwise 0.

struct StavskayaParams {
    double p = 0.5;
};

inline Model stavskaya_model(int cols, int rows, const StavskayaParams& params) {
    if (params.p < 0.0 || params.p > 1.0)
        throw domain_error("stavskaya_model: p must lie in [0,1]");
    auto space = std::make_shared<SiteSpace>(SiteSpace::z2_window(cols, rows));
    auto kernel = std::make_shared<TabularKernel>(
        space, ColorSpace::binary(), "stavskaya(p=" + std::to_string(params.p) + ")");
    std::vector<double> table;
    for (int n = 0; n < 2; ++n)
        for (int w = 0; w < 2; ++w) {
            const double p1 = (n + w > 0) ? params.p : 0.0;
            table.push_back(1.0 - p1);
            table.push_back(p1);
        }
    const int tbl = kernel->add_table(std::move(table));
    for (int y = 1; y < rows; ++y)
        for (int x = 1; x < cols; ++x) {
            const SiteId id = *space->site_at(x, y);
            kernel->set_site(id, {*space->site_at(x, y - 1), *space->site_at(x - 1, y)},
                             tbl);
        }
    kernel->set_homogeneous(true);
    return {space, kernel};
}

// ---------------------------------------------------------------------
// Closed-form criterion quantities for the benchmark models.

// Voter-model flip weight at h = 0: exp(-2b) / (exp(2b) + exp(-2b)).
inline double ising_voter_epsilon(double beta) {
    return std::exp(-2.0 * beta) / (std::exp(2.0 * beta) + std::exp(-2.0 * beta));
}

// Dust-rate entry of the POMM-Ising kernel for either footprint site.
inline double ising_dust_rate(double beta, double h) {
    return std::sinh(2.0 * beta) /
           (std::cosh(2.0 * beta) + std::cosh(2.0 * beta * (std::abs(h) - 1.0)));
}

inline double ising_dobrushin_gamma(double beta, double h) {
    return 2.0 * ising_dust_rate(beta, h);
}

// Maximal percolation parameter of the POMM-Ising kernel.
inline double ising_perc_param(double beta, double h) {
    return 0.5 * (std::tanh(beta * (std::abs(h) + 2.0)) -
                  std::tanh(beta * (std::abs(h) - 2.0)));
}

inline double stavskaya_dust_rate(double p) { return p; }
inline double stavskaya_dobrushin_gamma(double p) { return 2.0 * p; }
inline double stavskaya_perc_param(double p) { return p; }

// ---------------------------------------------------------------------
// PCA embedding: one spatial window of cells evolved for `depth` steps,
// laid out as a layered site space with the product order. Layer 0 is
// the initial stratum; cell columns listed in boundary_cells stay frozen
// at every layer.

struct PcaSpec {
    int cell_count = 0;
    std::vector<std::vector<int>> neighborhoods; // V_i per cell, i in V_i
    ColorSpace colors = ColorSpace::binary();
    // per cell: |E|^|V_i| rows of |E| probabilities, rows ranked over the
    // neighborhood colors in the declared order
    std::vector<std::vector<double>> transition;
    int depth = 1;
    bool periodic = false;
    std::vector<int> boundary_cells;
};

inline SiteId pca_site(const PcaSpec& spec, int cell, int layer) {
    return SiteId(layer * spec.cell_count + cell);
}

inline Model pca_to_pomm(const PcaSpec& spec) {
    const int u = spec.cell_count;
    if (u < 1) throw domain_error("pca: empty cell set");
    if (spec.depth < 1) throw domain_error("pca: depth must be >= 1");
    if (int(spec.neighborhoods.size()) != u || int(spec.transition.size()) != u)
        throw domain_error("pca: neighborhoods and transitions must cover all cells");
    if (spec.periodic && !spec.boundary_cells.empty())
        throw domain_error("pca: periodic windows take no boundary cells");

    std::vector<bool> is_boundary_cell(u, false);
    for (int b : spec.boundary_cells) {
        if (b < 0 || b >= u) throw domain_error("pca: boundary cell outside window");
        is_boundary_cell[b] = true;
    }
    const int k = spec.colors.size();
    // resolved neighborhoods (wrapped when periodic)
    std::vector<std::vector<int>> hood(u);
    for (int i = 0; i < u; ++i) {
        if (is_boundary_cell[i]) continue;
        bool self = false;
        for (int j : spec.neighborhoods[i]) {
            int c = j;
            if (spec.periodic) c = ((j % u) + u) % u;
            if (c < 0 || c >= u)
                throw truncation_error("pca: neighborhood of cell " +
                                           std::to_string(i) +
                                           " references cell " + std::to_string(j) +
                                           " outside the window",
                                       {SiteId(i)});
            self = self || c == i;
            hood[i].push_back(c);
        }
        if (!self)
            throw domain_error("pca: neighborhood of cell " + std::to_string(i) +
                               " does not contain the cell itself");
        size_t rows = 1;
        for (size_t m = 0; m < hood[i].size(); ++m) rows *= size_t(k);
        if (spec.transition[i].size() != rows * size_t(k))
            throw domain_error("pca: transition table of cell " + std::to_string(i) +
                               " does not match its neighborhood");
        for (size_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (int c = 0; c < k; ++c) sum += spec.transition[i][r * k + c];
            if (std::abs(sum - 1.0) > 1e-9)
                throw domain_error("pca: transition row " + std::to_string(r) +
                                   " of cell " + std::to_string(i) +
                                   " is not normalized");
        }
    }

    const int n = u * (spec.depth + 1);
    std::vector<std::pair<SiteId, SiteId>> edges;
    std::vector<bool> past_trunc(n, false), future_trunc(n, false);
    for (int t = 0; t <= spec.depth; ++t)
        for (int i = 0; i < u; ++i) {
            const SiteId id = SiteId(t * u + i);
            if (t == spec.depth) future_trunc[id] = true;
            if (t == 0 || is_boundary_cell[i]) {
                past_trunc[id] = true;
                if (is_boundary_cell[i]) future_trunc[id] = true;
                continue;
            }
            for (int j : hood[i]) edges.emplace_back(id, SiteId((t - 1) * u + j));
        }
    auto space = std::make_shared<SiteSpace>(SiteSpace::custom(
        n, edges, std::move(past_trunc), std::move(future_trunc),
        "pca:" + std::to_string(u) + "x" + std::to_string(spec.depth + 1), u,
        spec.depth + 1));

    auto kernel = std::make_shared<TabularKernel>(space, spec.colors, "pca");
    std::vector<int> table_of_cell(u, -1);
    for (int i = 0; i < u; ++i)
        if (!is_boundary_cell[i]) table_of_cell[i] = kernel->add_table(spec.transition[i]);
    for (int t = 1; t <= spec.depth; ++t)
        for (int i = 0; i < u; ++i) {
            if (is_boundary_cell[i]) continue;
            std::vector<SiteId> fp;
            for (int j : hood[i]) fp.push_back(SiteId((t - 1) * u + j));
            kernel->set_site(SiteId(t * u + i), std::move(fp), table_of_cell[i]);
        }
    return {space, kernel};
}

} // namespace poclab

#endif
