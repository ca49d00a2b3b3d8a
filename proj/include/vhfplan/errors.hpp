#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vhfplan {

// Plan construction cannot satisfy the request; `constraint()` names the
// binding limit ("tones", "channels", "cells", "coverage", "partition").
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(std::string constraint, const std::string& what)
        : std::runtime_error(what), constraint_(std::move(constraint)) {}
    const std::string& constraint() const { return constraint_; }

private:
    std::string constraint_;
};

// A carrier or its duplex pair would leave the 145.0-148.0 MHz band.
class BandViolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Destination unreachable once same-tone clusters are excluded.
class NoRouteError : public std::runtime_error {
public:
    NoRouteError(const std::string& what, std::vector<int> excluded_clusters)
        : std::runtime_error(what), excluded_(std::move(excluded_clusters)) {}
    const std::vector<int>& excluded_clusters() const { return excluded_; }

private:
    std::vector<int> excluded_;
};

} // namespace vhfplan
