#ifndef PNET_ERRORS_HPP
#define PNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pnet {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateElement : Error { using Error::Error; };
struct UnknownElement : Error { using Error::Error; };
struct OrderCycle : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };

struct InvalidSimplex : Error { using Error::Error; };
struct NonComposable : Error { using Error::Error; };
struct EndpointMismatch : Error { using Error::Error; };

struct NotALoop : Error { using Error::Error; };
struct NotACycle : Error { using Error::Error; };
struct NotACocycle : Error { using Error::Error; };

struct MissingCoverMatrix : Error { using Error::Error; };
struct NonInjective : Error { using Error::Error; };
struct CocycleViolation : Error { using Error::Error; };
struct BaseMismatch : Error { using Error::Error; };
struct BadExponent : Error { using Error::Error; };
struct NotAProjection : Error { using Error::Error; };
struct NotAMorphism : Error { using Error::Error; };
struct NotAnAction : Error { using Error::Error; };
struct LiftUndefined : Error { using Error::Error; };

struct RelatorViolation : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct WrongFundamentalGroup : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

} // namespace pnet

#endif
