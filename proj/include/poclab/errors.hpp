#ifndef POCLAB_ERRORS_HPP
#define POCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace poclab {

using SiteId = int32_t;

// Base class for all poclab errors. Everything thrown by the library
// derives from this, so callers can catch one type at the CLI boundary.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside its documented domain (site not in window, color not
// in the color space, parameter out of range, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// A geometric query needed sites beyond the window. Carries the ids of
// the sites whose neighborhoods are incomplete.
class truncation_error : public error {
public:
    truncation_error(const std::string& what, std::vector<SiteId> incomplete)
        : error(what), incomplete_sites(std::move(incomplete)) {}
    std::vector<SiteId> incomplete_sites;
};

// A set that was required to be a time box is not one. Carries a witness
// site lying in both the past and the future of the set.
class bad_box_error : public error {
public:
    bad_box_error(const std::string& what, SiteId witness_site)
        : error(what), witness(witness_site) {}
    SiteId witness;
};

// Kernel evaluation requested with an undefined footprint site.
class missing_boundary_error : public error {
public:
    missing_boundary_error(const std::string& what, std::vector<SiteId> missing)
        : error(what), missing_sites(std::move(missing)) {}
    std::vector<SiteId> missing_sites;
};

// Exact enumeration was refused because the state space is too large.
class enumeration_error : public error {
public:
    enumeration_error(const std::string& what, double states)
        : error(what), state_count(states) {}
    double state_count;
};

// Kernel file did not match the schema.
class schema_error : public error {
public:
    explicit schema_error(const std::string& what) : error(what) {}
};

// Randomized monotonicity audit found a counterexample.
class monotonicity_error : public error {
public:
    explicit monotonicity_error(const std::string& what) : error(what) {}
};

// Conditioning event has probability zero (non-nullness violated).
class singularity_error : public error {
public:
    explicit singularity_error(const std::string& what) : error(what) {}
};

} // namespace poclab

#endif
