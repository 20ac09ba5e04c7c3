#ifndef MODGLUE_ERRORS_HPP
#define MODGLUE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modglue {

/** Base class of all errors thrown by this library. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction of lattices from raw data.
struct NotALattice : Error { using Error::Error; };
struct NotCovers : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotComparable : Error { using Error::Error; };

// Relations and systems.
struct DimensionMismatch : Error { using Error::Error; };
struct MalformedSystem : Error { using Error::Error; };
struct InvalidSystem : Error { using Error::Error; };
struct NotModular : Error { using Error::Error; };
struct NotMonotone : Error { using Error::Error; };

/** A statement that holds for every well-formed input failed; this is a
    bug in the library, never a data condition. */
struct InternalTheoremViolation : Error { using Error::Error; };

// Generators.
struct TooLarge : Error { using Error::Error; };
struct UnknownKind : Error { using Error::Error; };

/** Text parse failure; `line` is 1-based. */
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

} // namespace modglue

#endif
