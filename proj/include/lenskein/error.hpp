#pragma once

#include <stdexcept>
#include <string>

namespace lenskein {

enum class Errc {
    BadLensParams,
    BadIndex,
    BadColumn,
    BadRow,
    BadSite,
    IllegalCommutation,
    NotASkeinCrossing,
    NotAKnot,
    EmptyIndex,
    EmptyLink,
    NoReductionNeeded,
    PlanSearchFailed,
    CycleDetected,
    InternalError,
    ParseError,
};

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

const char* errc_name(Errc c);

}  // namespace lenskein
