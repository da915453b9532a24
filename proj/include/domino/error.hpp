#pragma once

#include <stdexcept>
#include <string>

namespace domino {

enum class Errc {
    DisconnectedDomain,
    CutFailure,
    OpenPath,
    Unreachable,
    InconsistentTiling,
    NotAHeightFunction,
    IncompatibleHeights,
    NotExtendable,
    TooLarge,
    NotTileable,
    EmptyFiber,
    DomainError,
    NoRoot,
    BoundaryGradient,
    MeshFailure,
    Infeasible,
    Degenerate,
    InfeasibleHeight,
    DomainMismatch,
    BadSize,
    BadInput,
};

const char* errc_name(Errc c);

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

inline void require(bool cond, Errc c, const std::string& what) {
    if (!cond) fail(c, what);
}

}  // namespace domino
