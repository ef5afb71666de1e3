#ifndef POCLAB_DISTRIBUTION_HPP
#define POCLAB_DISTRIBUTION_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "poclab/configuration.hpp"
#include "poclab/errors.hpp"

namespace poclab {

// Probability table over the color configurations of a fixed, ordered
// list of sites. Configurations are ranked in mixed radix with the
// first listed site as the most significant digit.
class BoxDistribution {
public:
    BoxDistribution(SiteSet sites, int color_count)
        : sites_(std::move(sites)), color_count_(color_count) {
        double states = 1.0;
        for (size_t i = 0; i < sites_.size(); ++i) {
            states *= color_count_;
            if (states > double(1 << 20))
                throw enumeration_error(
                    "state space too large to enumerate (" +
                        std::to_string(sites_.size()) + " sites, " +
                        std::to_string(color_count_) + " colors)",
                    states);
        }
        probs_.assign(size_t(states), 0.0);
    }

    const SiteSet& sites() const { return sites_; }
    int color_count() const { return color_count_; }
    size_t states() const { return probs_.size(); }

    double& prob(size_t rank) { return probs_[rank]; }
    double prob(size_t rank) const { return probs_[rank]; }
    const std::vector<double>& probs() const { return probs_; }

    size_t rank_of(const Configuration& cfg) const {
        size_t rank = 0;
        for (SiteId x : sites_) rank = rank * color_count_ + size_t(cfg.color(x));
        return rank;
    }

    // Writes the configuration of the given rank into cfg (box sites only).
    void unrank_into(size_t rank, Configuration& cfg) const {
        for (size_t i = sites_.size(); i-- > 0;) {
            cfg.set(sites_[i], int(rank % color_count_));
            rank /= color_count_;
        }
    }

    double total() const {
        return std::accumulate(probs_.begin(), probs_.end(), 0.0);
    }

    void normalize() {
        const double z = total();
        if (z <= 0.0)
            throw singularity_error("distribution has zero total mass");
        for (double& p : probs_) p /= z;
    }

    // Marginal onto a subset of the sites (subset listed in any order).
    BoxDistribution marginal(const SiteSet& keep) const {
        for (SiteId x : keep)
            if (!contains(sites_, x))
                throw domain_error("marginal site not in distribution support");
        BoxDistribution out(keep, color_count_);
        // position of each kept site in sites_
        std::vector<size_t> pos;
        for (SiteId x : keep)
            pos.push_back(size_t(std::lower_bound(sites_.begin(), sites_.end(), x) -
                                 sites_.begin()));
        std::vector<int> digits(sites_.size());
        for (size_t r = 0; r < probs_.size(); ++r) {
            size_t t = r;
            for (size_t i = sites_.size(); i-- > 0;) {
                digits[i] = int(t % color_count_);
                t /= color_count_;
            }
            size_t rk = 0;
            for (size_t j = 0; j < keep.size(); ++j)
                rk = rk * color_count_ + size_t(digits[pos[j]]);
            out.prob(rk) += probs_[r];
        }
        return out;
    }

private:
    SiteSet sites_;
    int color_count_;
    std::vector<double> probs_;
};

// Variational distance between two distributions on the same support:
// half the L1 distance of the probability vectors.
inline double variational_distance(const std::vector<double>& mu,
                                   const std::vector<double>& nu) {
    if (mu.size() != nu.size())
        throw domain_error("variational distance of distributions on mismatched supports");
    double acc = 0.0;
    for (size_t i = 0; i < mu.size(); ++i) acc += std::abs(mu[i] - nu[i]);
    return acc / 2.0;
}

inline double variational_distance(const BoxDistribution& mu,
                                   const BoxDistribution& nu) {
    if (mu.sites() != nu.sites() || mu.color_count() != nu.color_count())
        throw domain_error("variational distance of distributions on mismatched supports");
    return variational_distance(mu.probs(), nu.probs());
}

} // namespace poclab

#endif
