#pragma once

#include <stdexcept>
#include <string>

namespace csurf {

enum class errc {
    invalid_complex,
    disconnected,
    not_properly_embedded,
    missing_edge,
    not_a_boundary_circle,
    not_a_subcomplex,
    not_a_cocycle,
    invalid_block,
    disconnecting_cut,
    insufficient_transit_data,
    inconsistent_data,
    fixed_point_forced,
    unknown_recipe,
    bad_file,
};

/// Name used in machine-readable error output.
inline const char* errc_name(errc c) {
    switch (c) {
    case errc::invalid_complex: return "InvalidComplex";
    case errc::disconnected: return "Disconnected";
    case errc::not_properly_embedded: return "NotProperlyEmbedded";
    case errc::missing_edge: return "MissingEdge";
    case errc::not_a_boundary_circle: return "NotABoundaryCircle";
    case errc::not_a_subcomplex: return "NotASubcomplex";
    case errc::not_a_cocycle: return "NotACocycle";
    case errc::invalid_block: return "InvalidBlock";
    case errc::disconnecting_cut: return "DisconnectingCut";
    case errc::insufficient_transit_data: return "InsufficientTransitData";
    case errc::inconsistent_data: return "InconsistentData";
    case errc::fixed_point_forced: return "FixedPointForced";
    case errc::unknown_recipe: return "UnknownRecipe";
    case errc::bad_file: return "BadFile";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }

private:
    errc code_;
};

} // namespace csurf
