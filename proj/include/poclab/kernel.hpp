#ifndef POCLAB_KERNEL_HPP
#define POCLAB_KERNEL_HPP

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poclab/configuration.hpp"
#include "poclab/distribution.hpp"
#include "poclab/geometry.hpp"
#include "poclab/rng.hpp"
#include "poclab/site_space.hpp"

namespace poclab {

// Family of single-site oriented kernels over a window. A kernel assigns
// to each evaluable site x a conditional distribution over colors that
// reads only the colors of its declared footprint, a finite subset of
// the strict past of x.
class Kernel {
public:
    Kernel(std::shared_ptr<const SiteSpace> space, ColorSpace colors,
           std::string label)
        : space_(std::move(space)), colors_(std::move(colors)),
          label_(std::move(label)) {}
    virtual ~Kernel() = default;

    const SiteSpace& space() const { return *space_; }
    std::shared_ptr<const SiteSpace> space_ptr() const { return space_; }
    const ColorSpace& colors() const { return colors_; }
    const std::string& label() const { return label_; }

    // False at sites where the conditional law is unknown (e.g. the
    // window's past-boundary stratum).
    virtual bool evaluable(SiteId x) const = 0;

    // Declared dependence set of site x, in the internal evaluation order.
    virtual std::span<const SiteId> footprint(SiteId x) const = 0;

    // Writes the distribution over colors at x given cfg into out
    // (size = colors().size()). Throws missing_boundary_error when a
    // footprint site is undefined.
    virtual void distribution(SiteId x, const Configuration& cfg,
                              std::span<double> out) const = 0;

    double probability(SiteId x, int color_idx, const Configuration& cfg) const {
        if (color_idx < 0 || color_idx >= colors_.size())
            throw domain_error("color index outside color space");
        std::vector<double> buf(colors_.size());
        distribution(x, cfg, buf);
        return buf[color_idx];
    }

    // One representative per translation class when the model declares
    // homogeneity; otherwise every evaluable site.
    virtual bool homogeneous() const { return false; }
    virtual SiteSet representative_sites() const {
        SiteSet out;
        for (SiteId x = 0; x < space().size(); ++x)
            if (evaluable(x)) out.push_back(x);
        if (homogeneous() && !out.empty()) {
            // deepest evaluable site: farthest from the past boundary
            SiteId best = out.front();
            for (SiteId x : out)
                if (space().level(x) > space().level(best)) best = x;
            return {best};
        }
        return out;
    }

protected:
    void require_evaluable(SiteId x) const {
        space().check_site(x);
        if (!evaluable(x))
            throw truncation_error("kernel has no conditional law at site " +
                                       space().site_name(x) +
                                       " (past escapes the window)",
                                   {x});
    }

private:
    std::shared_ptr<const SiteSpace> space_;
    ColorSpace colors_;
    std::string label_;
};

// Kernel backed by per-site conditional probability tables. Sites may
// share a table (homogeneous models); the footprint order of each site
// indexes the table rows in mixed radix, first footprint site most
// significant.
class TabularKernel final : public Kernel {
public:
    TabularKernel(std::shared_ptr<const SiteSpace> space, ColorSpace colors,
                  std::string label)
        : Kernel(std::move(space), std::move(colors), std::move(label)),
          table_of_(this->space().size(), -1),
          footprint_of_(this->space().size()) {}

    // Registers a table of `rows x colors` probabilities; rows are ranked
    // over footprint configurations. Returns the table id.
    int add_table(std::vector<double> probs) {
        tables_.push_back(std::move(probs));
        return int(tables_.size()) - 1;
    }

    // Attaches a site to a table with the given footprint evaluation order.
    void set_site(SiteId x, std::vector<SiteId> footprint_order, int table) {
        space().check_site(x);
        const size_t rows = rank_count(footprint_order.size());
        if (tables_.at(table).size() != rows * size_t(colors().size()))
            throw domain_error("table size does not match footprint of site " +
                               space().site_name(x));
        footprint_of_[x] = std::move(footprint_order);
        table_of_[x] = table;
    }

    bool evaluable(SiteId x) const override {
        space().check_site(x);
        return table_of_[x] >= 0;
    }

    std::span<const SiteId> footprint(SiteId x) const override {
        require_evaluable(x);
        return footprint_of_[x];
    }

    void distribution(SiteId x, const Configuration& cfg,
                      std::span<double> out) const override {
        require_evaluable(x);
        const int k = colors().size();
        size_t rank = 0;
        for (SiteId y : footprint_of_[x]) rank = rank * k + size_t(cfg.color(y));
        const double* row = tables_[table_of_[x]].data() + rank * k;
        std::copy(row, row + k, out.begin());
    }

    void set_homogeneous(bool value) { homogeneous_ = value; }
    bool homogeneous() const override { return homogeneous_; }

    size_t rank_count(size_t footprint_size) const {
        size_t rows = 1;
        for (size_t i = 0; i < footprint_size; ++i) rows *= size_t(colors().size());
        return rows;
    }

private:
    std::vector<std::vector<double>> tables_;
    std::vector<int> table_of_;
    std::vector<std::vector<SiteId>> footprint_of_;
    bool homogeneous_ = false;
};

// A site space with a kernel on it; the unit the model zoo hands out.
struct Model {
    std::shared_ptr<const SiteSpace> space;
    std::shared_ptr<const Kernel> kernel;
};

// ---------------------------------------------------------------------
// Box kernels via the product over a slicing order.

namespace detail {

inline void require_interior_matches_box(const TimeBox& box,
                                         const Configuration& interior) {
    int defined_in_box = 0;
    for (SiteId x : box.sites())
        if (interior.defined(x)) ++defined_in_box;
    if (defined_in_box != box.size() || interior.defined_count() != box.size())
        throw domain_error("interior configuration must define exactly the box");
}

} // namespace detail

// Probability of the interior configuration on the box given the
// boundary, evaluated site by site in the given order. The order must
// list each box site exactly once with pasts before futures; the product
// formula makes the value independent of which such order is used.
inline double box_probability_in_order(const Kernel& kernel, const SiteSet& order,
                                       const Configuration& interior,
                                       const Configuration& boundary) {
    Configuration merged = boundary;
    for (SiteId x : order) merged.set(x, interior.color(x));
    std::vector<double> buf(kernel.colors().size());
    if (order.size() <= 64) {
        double p = 1.0;
        for (SiteId x : order) {
            kernel.distribution(x, merged, buf);
            p *= buf[size_t(interior.color(x))];
            if (p == 0.0) return 0.0;
        }
        return p;
    }
    // log-space accumulation for large boxes
    double lp = 0.0;
    for (SiteId x : order) {
        kernel.distribution(x, merged, buf);
        const double p = buf[size_t(interior.color(x))];
        if (p == 0.0) return 0.0;
        lp += std::log(p);
    }
    return std::exp(lp);
}

inline double box_probability(const Kernel& kernel, const TimeBox& box,
                              const Configuration& interior,
                              const Configuration& boundary) {
    detail::require_interior_matches_box(box, interior);
    return box_probability_in_order(kernel, box.slicing_order(), interior, boundary);
}

// Full probability table of the box kernel given the boundary. The table
// is returned unnormalized; it sums to 1 up to roundoff because it is a
// product of normalized factors.
inline BoxDistribution exact_box_distribution(const Kernel& kernel,
                                              const TimeBox& box,
                                              const Configuration& boundary) {
    BoxDistribution dist(box.sites(), kernel.colors().size());
    if (box.empty()) return dist;
    const SiteSet order = box.slicing_order();
    Configuration merged = boundary;
    std::vector<double> buf(kernel.colors().size());
    for (size_t rank = 0; rank < dist.states(); ++rank) {
        dist.unrank_into(rank, merged);
        double p = 1.0;
        for (SiteId x : order) {
            kernel.distribution(x, merged, buf);
            p *= buf[size_t(merged.color(x))];
            if (p == 0.0) break;
        }
        dist.prob(rank) = p;
    }
    return dist;
}

// ---------------------------------------------------------------------
// Randomized properness audit.

struct PropernessReport {
    int trials = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Audits the kernel at random sites and footprint configurations:
// rows normalize to 1, footprints sit inside the strict past, and the
// law ignores sites outside the declared footprint.
inline PropernessReport properness_check(const Kernel& kernel, int trials,
                                         uint64_t seed = 17) {
    PropernessReport report;
    report.trials = trials;
    const SiteSpace& space = kernel.space();
    SiteSet evaluable;
    for (SiteId x = 0; x < space.size(); ++x)
        if (kernel.evaluable(x)) evaluable.push_back(x);
    if (evaluable.empty()) {
        report.violations.push_back("kernel has no evaluable sites");
        return report;
    }
    const int k = kernel.colors().size();
    std::vector<double> row(k), row2(k);
    std::vector<char> oriented_checked(space.size(), 0);
    for (int t = 0; t < trials; ++t) {
        auto pick = [&](uint32_t idx, size_t m) {
            return size_t(counter_bits(seed, StreamClass::audit, uint32_t(t), 0, idx) % m);
        };
        const SiteId x = evaluable[pick(0, evaluable.size())];
        Configuration cfg(space.size());
        const auto fp = kernel.footprint(x);
        for (size_t i = 0; i < fp.size(); ++i)
            cfg.set(fp[i], int(pick(uint32_t(10 + i), size_t(k))));

        // (i) normalization
        kernel.distribution(x, cfg, row);
        double sum = 0.0;
        bool in_range = true;
        for (double p : row) {
            sum += p;
            in_range = in_range && p >= 0.0 && p <= 1.0 + 1e-12;
        }
        if (std::abs(sum - 1.0) > 1e-12 || !in_range)
            report.violations.push_back("normalization fails at site " +
                                        space.site_name(x) + " (sum=" +
                                        std::to_string(sum) + ")");

        // (ii) orientedness: footprint inside the strict past (once per site)
        if (!oriented_checked[x]) {
            oriented_checked[x] = 1;
            for (SiteId y : fp)
                if (!space.less(y, x))
                    report.violations.push_back(
                        "footprint of " + space.site_name(x) + " contains " +
                        space.site_name(y) + ", which is not in its past");
        }

        // (iii) locality: perturbing a non-footprint site leaves the law fixed
        const SiteId other =
            SiteId(pick(5, size_t(space.size())));
        bool in_fp = other == x;
        for (SiteId y : fp) in_fp = in_fp || y == other;
        if (!in_fp) {
            Configuration cfg2 = cfg;
            cfg2.set(other, int(pick(6, size_t(k))));
            kernel.distribution(x, cfg2, row2);
            if (row != row2)
                report.violations.push_back(
                    "law at " + space.site_name(x) + " reads undeclared site " +
                    space.site_name(other));
        }
    }
    return report;
}

// ---------------------------------------------------------------------
// Induced unoriented conditional law on a finite target set.

// Conditional distribution of the colors on `target` given the colors of
// its Markov blanket, for a Markov kernel (footprint equal to the
// nearest past everywhere it matters). Normalized; throws
// singularity_error when the conditioning event has probability zero.
inline BoxDistribution gibbs_specification(const Kernel& kernel, SiteSet target,
                                           const Configuration& surround) {
    const SiteSpace& space = kernel.space();
    sort_unique(target);
    if (target.empty()) throw domain_error("gibbs_specification: empty target");
    const SiteSet future_boundary = nearest_future(space, target);

    SiteSet factors = target;
    factors.insert(factors.end(), future_boundary.begin(), future_boundary.end());
    sort_unique(factors);
    for (SiteId x : factors) {
        if (!kernel.evaluable(x))
            throw truncation_error("gibbs_specification: no conditional law at " +
                                       space.site_name(x),
                                   {x});
        const auto fp = kernel.footprint(x);
        SiteSet fp_sorted(fp.begin(), fp.end());
        sort_unique(fp_sorted);
        const auto past = space.past(x);
        if (!std::equal(fp_sorted.begin(), fp_sorted.end(), past.begin(), past.end()))
            throw domain_error(
                "gibbs_specification requires a Markov kernel; footprint of " +
                space.site_name(x) + " is not its nearest past");
        for (SiteId y : fp)
            if (!contains(target, y) && !surround.defined(y))
                throw missing_boundary_error(
                    "surround does not define " + space.site_name(y) +
                        ", needed by the law at " + space.site_name(x),
                    {y});
    }
    for (SiteId x : future_boundary)
        if (!surround.defined(x))
            throw missing_boundary_error(
                "surround does not define nearest-future site " + space.site_name(x),
                {x});

    BoxDistribution dist(target, kernel.colors().size());
    Configuration merged = surround;
    std::vector<double> buf(kernel.colors().size());
    for (size_t rank = 0; rank < dist.states(); ++rank) {
        dist.unrank_into(rank, merged);
        double w = 1.0;
        for (SiteId x : target) {
            kernel.distribution(x, merged, buf);
            w *= buf[size_t(merged.color(x))];
            if (w == 0.0) break;
        }
        if (w > 0.0)
            for (SiteId x : future_boundary) {
                kernel.distribution(x, merged, buf);
                w *= buf[size_t(surround.color(x))];
                if (w == 0.0) break;
            }
        dist.prob(rank) = w;
    }
    if (dist.total() <= 0.0)
        throw singularity_error(
            "gibbs_specification: conditioning event has probability zero "
            "(kernel is not non-null on the surround configuration)");
    dist.normalize();
    return dist;
}

} // namespace poclab

#endif
