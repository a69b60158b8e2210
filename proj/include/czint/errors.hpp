#pragma once

#include <stdexcept>
#include <string>

namespace czint {

// Every failure mode surfaced by the library carries one of these codes so
// that callers (in particular the CLI) can map it to a stable diagnostic.
enum class Errc {
    elliptic_guard_violated,
    not_elliptic,
    empty_profile,
    non_holomorphic_end,
    not_embedded_end,
    mismatched_orbits,
    non_integral_result,
    negative_index,
    missing_witness,
    inconsistent_witness,
    not_simple,
    missing_self_gin,
    orbit_not_eligible,
    profile_contradicts_flag,
    invalid_open_book,
    inconsistent_input,
    matching_invalid,
    schema_error,
    reference_error,
    guard_error,
    truncation_too_small,
    vector_too_small,
    degenerate_orbit,
    law_violation,
    arithmetic_overflow,
    invalid_argument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::elliptic_guard_violated: return "EllipticGuardViolated";
    case Errc::not_elliptic: return "NotElliptic";
    case Errc::empty_profile: return "EmptyProfile";
    case Errc::non_holomorphic_end: return "NonHolomorphicEnd";
    case Errc::not_embedded_end: return "NotEmbeddedEnd";
    case Errc::mismatched_orbits: return "MismatchedOrbits";
    case Errc::non_integral_result: return "NonIntegralResult";
    case Errc::negative_index: return "NegativeIndex";
    case Errc::missing_witness: return "MissingWitness";
    case Errc::inconsistent_witness: return "InconsistentWitness";
    case Errc::not_simple: return "NotSimple";
    case Errc::missing_self_gin: return "MissingSelfGin";
    case Errc::orbit_not_eligible: return "OrbitNotEligible";
    case Errc::profile_contradicts_flag: return "ProfileContradictsFlag";
    case Errc::invalid_open_book: return "InvalidOpenBook";
    case Errc::inconsistent_input: return "InconsistentInput";
    case Errc::matching_invalid: return "MatchingInvalid";
    case Errc::schema_error: return "SchemaError";
    case Errc::reference_error: return "ReferenceError";
    case Errc::guard_error: return "GuardError";
    case Errc::truncation_too_small: return "TruncationTooSmall";
    case Errc::vector_too_small: return "VectorTooSmall";
    case Errc::degenerate_orbit: return "DegenerateOrbit";
    case Errc::law_violation: return "LawViolation";
    case Errc::arithmetic_overflow: return "ArithmeticOverflow";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    // Input-shaped errors exit with code 2 in the CLI; everything else that
    // reaches the top level is a verdict/invariant violation (exit 1).
    bool is_input_error() const noexcept {
        switch (code_) {
        case Errc::schema_error:
        case Errc::reference_error:
        case Errc::guard_error:
        case Errc::elliptic_guard_violated:
        case Errc::invalid_argument:
        case Errc::missing_witness:
        case Errc::not_elliptic:
        case Errc::empty_profile:
        case Errc::matching_invalid:
            return true;
        default:
            return false;
        }
    }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace czint
