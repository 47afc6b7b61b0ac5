#pragma once

#include <stdexcept>
#include <string>

namespace artifact {

// Base for every failure the library reports on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularInput : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Input sits within tolerance of two families; both names are kept for the caller.
class AmbiguousNearBoundary : public Error {
public:
    AmbiguousNearBoundary(std::string first, std::string second, const std::string& what)
        : Error(what + " (candidates: " + first + " / " + second + ")"),
          first_(std::move(first)), second_(std::move(second)) {}
    const std::string& first() const { return first_; }
    const std::string& second() const { return second_; }

private:
    std::string first_;
    std::string second_;
};

class StabilizerSolveFailed : public Error {
public:
    StabilizerSolveFailed(double best_residual, const std::string& what)
        : Error(what + " (best residual " + std::to_string(best_residual) + ")"),
          best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

class RankUnstable : public Error {
public:
    RankUnstable(double sigma, const std::string& what)
        : Error(what), sigma_(sigma) {}
    double sigma() const { return sigma_; }

private:
    double sigma_;
};

class UnknownEdge : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class BadParams : public Error {
public:
    using Error::Error;
};

class DivergenceDetected : public Error {
public:
    using Error::Error;
};

class NotStandardPosition : public Error {
public:
    using Error::Error;
};

class SamplingFailed : public Error {
public:
    using Error::Error;
};

}  // namespace artifact
