#pragma once

#include <stdexcept>
#include <string>

namespace twpa {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A physical input that must be strictly positive was zero or negative.
class NonPositiveInput : public Error {
public:
    explicit NonPositiveInput(const std::string& field)
        : Error("non-positive input: " + field), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// The impedance constraint would require a negative ground capacitance.
class NegativeCapacitance : public Error {
public:
    explicit NegativeCapacitance(const std::string& msg) : Error(msg) {}
};

/// A derived element value has a vanishing denominator (e.g. C_c + C_r = 0).
class ZeroDenominator : public Error {
public:
    explicit ZeroDenominator(const std::string& msg) : Error(msg) {}
};

/// Evaluation requested at (or numerically indistinguishable from) the
/// resonator pole frequency.
class AtPole : public Error {
public:
    explicit AtPole(const std::string& msg) : Error(msg) {}
};

/// Frequency lies in the evanescent gap above the resonance; no
/// propagating wavenumber exists there.
class Stopband : public Error {
public:
    explicit Stopband(const std::string& msg) : Error(msg) {}
};

/// Signal frequency coincides with the pump; the two-mode quadrature
/// angles are not meaningful for a degenerate configuration.
class DegeneratePump : public Error {
public:
    explicit DegeneratePump(const std::string& msg) : Error(msg) {}
};

/// A (C_c, C_r) point does not admit a valid unit cell.
class InvalidCell : public Error {
public:
    explicit InvalidCell(const std::string& msg) : Error(msg) {}
};

/// A bandwidth query band contains no grid points.
class EmptyBand : public Error {
public:
    explicit EmptyBand(const std::string& msg) : Error(msg) {}
};

/// Every point of an optimization grid violates the cell constraints.
class NoFeasiblePoint : public Error {
public:
    explicit NoFeasiblePoint(const std::string& msg) : Error(msg) {}
};

/// Run-configuration parse or validation failure. Carries the offending
/// line (0 = not line-specific) and field name for diagnostics.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, int line = 0, std::string field = "")
        : Error(make_message(msg, line, field)), line_(line), field_(std::move(field)) {}
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    static std::string make_message(const std::string& msg, int line, const std::string& field) {
        std::string out = "config error";
        if (line > 0) out += " at line " + std::to_string(line);
        if (!field.empty()) out += " (field '" + field + "')";
        return out + ": " + msg;
    }
    int line_;
    std::string field_;
};

} // namespace twpa
