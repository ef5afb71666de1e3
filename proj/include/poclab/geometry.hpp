#ifndef POCLAB_GEOMETRY_HPP
#define POCLAB_GEOMETRY_HPP

#include <string>
#include <vector>

#include "poclab/site_space.hpp"

namespace poclab {

// The four classes cut out of the window by a site set: the set itself,
// its strict future, its strict past, and the sites unrelated to all of
// it. past and future may overlap; they are disjoint exactly when the
// set is a time box.
struct Region {
    SiteSet sites;     // the set itself
    SiteSet future;    // strictly above some member, outside the set
    SiteSet past;      // strictly below some member, outside the set
    SiteSet unrelated; // unrelated to every member

    // Sites lying in both past and future (time-box obstruction witnesses).
    SiteSet past_future_overlap() const {
        SiteSet out;
        std::set_intersection(past.begin(), past.end(), future.begin(),
                              future.end(), std::back_inserter(out));
        return out;
    }
};

inline Region classify_region(const SiteSpace& space, SiteSet sites) {
    sort_unique(sites);
    Region r;
    r.past = space.strict_past_of(sites);
    r.future = space.strict_future_of(sites);
    std::vector<char> related(space.size(), 0);
    for (SiteId x : sites) related[x] = 1;
    for (SiteId x : r.past) related[x] = 1;
    for (SiteId x : r.future) related[x] = 1;
    for (SiteId x = 0; x < space.size(); ++x)
        if (!related[x]) r.unrelated.push_back(x);
    r.sites = std::move(sites);
    return r;
}

// A set is a time box when its past and future do not meet. The empty
// set is a time box by convention.
inline bool is_time_box(const SiteSpace& space, const SiteSet& sites) {
    if (sites.empty()) return true;
    return classify_region(space, sites).past_future_overlap().empty();
}

// A validated time box together with its slicing and nearest-past boundary.
//
// Slices are the iterated minima of the box; within a slice, sites are
// listed in increasing id order (lexicographic for coordinate windows).
// Construction throws bad_box_error with a witness site otherwise.
class TimeBox {
public:
    TimeBox(const SiteSpace& space, SiteSet sites) {
        sort_unique(sites);
        Region region = classify_region(space, sites);
        const SiteSet overlap = region.past_future_overlap();
        if (!overlap.empty())
            throw bad_box_error("not a time box: site " +
                                    space.site_name(overlap.front()) +
                                    " lies in both the past and the future",
                                overlap.front());
        sites_ = std::move(region.sites);
        // Iterated minima via Kahn peeling of the induced subgraph. For a
        // time box, every chain between box sites stays inside the box, so
        // in-box covering edges carry the full restricted order.
        std::vector<int> indeg(space.size(), -1);
        for (SiteId x : sites_) indeg[x] = 0;
        for (SiteId x : sites_)
            for (SiteId y : space.past(x))
                if (indeg[y] >= 0) ++indeg[x];
        SiteSet frontier;
        for (SiteId x : sites_)
            if (indeg[x] == 0) frontier.push_back(x);
        while (!frontier.empty()) {
            sort_unique(frontier);
            SiteSet next;
            for (SiteId x : frontier)
                for (SiteId y : space.future(x))
                    if (indeg[y] > 0 && --indeg[y] == 0) next.push_back(y);
            slices_.push_back(std::move(frontier));
            frontier = std::move(next);
        }
        // nearest-past boundary
        for (SiteId x : sites_)
            for (SiteId y : space.past(x))
                if (!contains(sites_, y)) past_boundary_.push_back(y);
        sort_unique(past_boundary_);
    }

    const SiteSet& sites() const { return sites_; }
    const std::vector<SiteSet>& slices() const { return slices_; }
    const SiteSet& nearest_past_boundary() const { return past_boundary_; }
    int size() const { return int(sites_.size()); }
    bool empty() const { return sites_.empty(); }

    // Sites in slicing order: slice 1 first, increasing ids inside a slice.
    SiteSet slicing_order() const {
        SiteSet out;
        out.reserve(sites_.size());
        for (const auto& s : slices_) out.insert(out.end(), s.begin(), s.end());
        return out;
    }

    // 1-based slice index of a box site (its depth from the past boundary).
    int slice_index(SiteId x) const {
        for (size_t k = 0; k < slices_.size(); ++k)
            if (contains(slices_[k], x)) return int(k) + 1;
        throw domain_error("site " + std::to_string(x) + " not in the box");
    }

private:
    SiteSet sites_;
    std::vector<SiteSet> slices_;
    SiteSet past_boundary_;
};

inline std::vector<SiteSet> slicing(const SiteSpace& space, SiteSet sites) {
    return TimeBox(space, std::move(sites)).slices();
}

namespace detail {

// Nearest past of a set; throws when some member's past escapes the window.
inline SiteSet nearest_past(const SiteSpace& space, const SiteSet& sites) {
    SiteSet truncated;
    for (SiteId x : sites)
        if (space.past_truncated(x)) truncated.push_back(x);
    if (!truncated.empty()) {
        std::string msg = "nearest past escapes the window at";
        for (SiteId x : truncated) msg += " " + space.site_name(x);
        throw truncation_error(msg, truncated);
    }
    SiteSet out;
    for (SiteId x : sites)
        for (SiteId y : space.past(x))
            if (!contains(sites, y)) out.push_back(y);
    sort_unique(out);
    return out;
}

} // namespace detail

// k-past of a set, following the iteration
// past^k(L) = nearest_past(past^{k-1}(L)) u past^{k-1}(L), past^1 = nearest_past.
inline SiteSet k_past(const SiteSpace& space, SiteSet sites, int k) {
    if (k < 1) throw domain_error("k_past: k must be >= 1");
    sort_unique(sites);
    for (SiteId x : sites) space.check_site(x);
    SiteSet acc = detail::nearest_past(space, sites);
    for (int step = 2; step <= k; ++step) {
        SiteSet grown = detail::nearest_past(space, acc);
        SiteSet merged;
        std::set_union(acc.begin(), acc.end(), grown.begin(), grown.end(),
                       std::back_inserter(merged));
        acc = std::move(merged);
    }
    return acc;
}

// Nearest future of a set; symmetric to the nearest past.
inline SiteSet nearest_future(const SiteSpace& space, SiteSet sites) {
    sort_unique(sites);
    for (SiteId x : sites) space.check_site(x);
    SiteSet truncated;
    for (SiteId x : sites)
        if (space.future_truncated(x)) truncated.push_back(x);
    if (!truncated.empty()) {
        std::string msg = "nearest future escapes the window at";
        for (SiteId x : truncated) msg += " " + space.site_name(x);
        throw truncation_error(msg, truncated);
    }
    SiteSet out;
    for (SiteId x : sites)
        for (SiteId y : space.future(x))
            if (!contains(sites, y)) out.push_back(y);
    sort_unique(out);
    return out;
}

// Nearest past without the completeness requirement: the in-window part
// of the boundary, as needed for sampling and coupling (where boundary
// sites are data, not geometry to be expanded further).
inline SiteSet nearest_past_in_window(const SiteSpace& space, const SiteSet& sites) {
    SiteSet out;
    for (SiteId x : sites)
        for (SiteId y : space.past(x))
            if (!contains(sites, y)) out.push_back(y);
    sort_unique(out);
    return out;
}

} // namespace poclab

#endif
