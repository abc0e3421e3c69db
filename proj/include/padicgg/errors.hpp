#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padicgg {

enum class errc {
    denominator_divisible_by_p,
    context_mismatch,
    not_a_unit,
    zero_argument,
    precision_exhausted,
    composite_p,
    field_too_large,
    trivial_character,
    modulus_mismatch,
    not_an_integer,
    bound_too_large_for_precision,
    no_representative_in_bound,
    singular_curve,
    singular_hessian,
    precondition_failed,
    arithmetic_overflow,
    usage,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
    case errc::denominator_divisible_by_p: return "DenominatorDivisibleByP";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::not_a_unit: return "NotAUnit";
    case errc::zero_argument: return "ZeroArgument";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::composite_p: return "CompositeP";
    case errc::field_too_large: return "FieldTooLarge";
    case errc::trivial_character: return "TrivialCharacter";
    case errc::modulus_mismatch: return "ModulusMismatch";
    case errc::not_an_integer: return "NotAnInteger";
    case errc::bound_too_large_for_precision: return "BoundTooLargeForPrecision";
    case errc::no_representative_in_bound: return "NoRepresentativeInBound";
    case errc::singular_curve: return "SingularCurve";
    case errc::singular_hessian: return "SingularHessian";
    case errc::precondition_failed: return "PreconditionFailed";
    case errc::arithmetic_overflow: return "ArithmeticOverflow";
    case errc::usage: return "Usage";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// Raised by theorem checks when a stated hypothesis does not hold.
/// `gate()` names the violated hypothesis, e.g. "d_cubed_is_one".
class precondition_error : public error {
public:
    explicit precondition_error(std::string gate)
        : error(errc::precondition_failed, gate), gate_(std::move(gate)) {}
    precondition_error(std::string gate, const std::string& detail)
        : error(errc::precondition_failed, gate + ": " + detail), gate_(std::move(gate)) {}

    const std::string& gate() const noexcept { return gate_; }

private:
    std::string gate_;
};

} // namespace padicgg
