#ifndef POCLAB_CONFIGURATION_HPP
#define POCLAB_CONFIGURATION_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "poclab/errors.hpp"
#include "poclab/site_space.hpp"

namespace poclab {

// Finite, totally ordered color space. The declared order is the one
// used for stochastic domination and the FKG machinery; values are the
// numeric labels used in files, observables and textures.
class ColorSpace {
public:
    explicit ColorSpace(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw domain_error("color space must be nonempty");
        for (size_t i = 0; i + 1 < values_.size(); ++i)
            if (!(values_[i] < values_[i + 1]))
                throw domain_error("color values must be strictly increasing");
    }

    static ColorSpace spin() { return ColorSpace({-1.0, +1.0}); }
    static ColorSpace binary() { return ColorSpace({0.0, 1.0}); }

    int size() const { return int(values_.size()); }
    double value(int idx) const { return values_.at(idx); }
    int min_index() const { return 0; }
    int max_index() const { return size() - 1; }

    int index_of(double value) const {
        for (int i = 0; i < size(); ++i)
            if (values_[i] == value) return i;
        throw domain_error("color " + std::to_string(value) + " not in color space");
    }

    const std::vector<double>& values() const { return values_; }

    friend bool operator==(const ColorSpace& a, const ColorSpace& b) {
        return a.values_ == b.values_;
    }

private:
    std::vector<double> values_;
};

// Partial assignment site -> color index over a window. Undefined sites
// hold -1. Color indices refer to some ColorSpace known from context.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(int window_size) : colors_(window_size, -1) {}

    static Configuration constant(int window_size, int color_idx) {
        Configuration c(window_size);
        std::fill(c.colors_.begin(), c.colors_.end(), int16_t(color_idx));
        c.defined_ = window_size;
        return c;
    }

    int window_size() const { return int(colors_.size()); }
    bool defined(SiteId x) const { return colors_[x] >= 0; }
    int color(SiteId x) const {
        if (colors_[x] < 0)
            throw missing_boundary_error(
                "site " + std::to_string(x) + " has no assigned color", {x});
        return colors_[x];
    }
    int color_or(SiteId x, int fallback) const {
        return colors_[x] >= 0 ? colors_[x] : fallback;
    }

    void set(SiteId x, int color_idx) {
        if (colors_[x] < 0) ++defined_;
        colors_[x] = int16_t(color_idx);
    }
    void unset(SiteId x) {
        if (colors_[x] >= 0) --defined_;
        colors_[x] = -1;
    }
    int defined_count() const { return defined_; }

    SiteSet defined_set() const {
        SiteSet out;
        for (SiteId x = 0; x < window_size(); ++x)
            if (colors_[x] >= 0) out.push_back(x);
        return out;
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<int16_t> colors_;
    int defined_ = 0;
};

// True when a <= b on every site where both are defined and they share
// the same defined set.
inline bool config_leq(const Configuration& a, const Configuration& b) {
    if (a.window_size() != b.window_size()) return false;
    for (SiteId x = 0; x < a.window_size(); ++x) {
        if (a.defined(x) != b.defined(x)) return false;
        if (a.defined(x) && a.color(x) > b.color(x)) return false;
    }
    return true;
}

} // namespace poclab

#endif
