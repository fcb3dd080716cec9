#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace confsample {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &message) : std::runtime_error(message) {}
};

/// Malformed formula text; `position` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string &message, std::size_t position)
        : Error(message + " (at offset " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

/// Syntactically valid preprocessor expression that falls outside the boolean
/// fragment (arithmetic comparisons, function-like macros, ...).
class UnsupportedExpressionError : public Error {
public:
    UnsupportedExpressionError(const std::string &snippet, std::size_t position)
        : Error("unsupported expression: '" + snippet + "'"), snippet(snippet),
          position(position) {}
    std::string snippet;
    std::size_t position;
};

/// A formula variable has no value in the configuration it is evaluated under.
class UnboundOptionError : public Error {
public:
    explicit UnboundOptionError(const std::string &option)
        : Error("option '" + option + "' is not assigned"), option(option) {}
    std::string option;
};

/// #endif/#else/#elif without a matching conditional, or EOF with open ones.
class UnbalancedDirectivesError : public Error {
public:
    UnbalancedDirectivesError(const std::string &file, int line, const std::string &what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file(file), line(line) {}
    std::string file;
    int line;
};

/// No valid configuration exists for the request.
class UnsatisfiableError : public Error {
public:
    explicit UnsatisfiableError(const std::string &message) : Error(message) {}
};

/// A configurable work budget (solver decisions, rejection draws, tuple
/// bookkeeping) was exhausted; signals an intractable instance.
class ResourceLimitError : public Error {
public:
    ResourceLimitError(const std::string &message, std::uint64_t budget)
        : Error(message + " (budget " + std::to_string(budget) + ")"), budget(budget) {}
    std::uint64_t budget;
};

/// Sample sets with different scopes or option spaces cannot be combined.
class SpaceMismatchError : public Error {
public:
    explicit SpaceMismatchError(const std::string &message) : Error(message) {}
};

/// Global-scope request refused because the merged option space is too large
/// for the algorithm.
class InfeasibleAtScaleError : public Error {
public:
    InfeasibleAtScaleError(const std::string &algorithm, std::size_t optionCount,
                           std::size_t threshold)
        : Error("algorithm '" + algorithm + "' is infeasible at global scale: " +
                std::to_string(optionCount) + " options exceed threshold " +
                std::to_string(threshold)),
          algorithm(algorithm), optionCount(optionCount), threshold(threshold) {}
    std::string algorithm;
    std::size_t optionCount;
    std::size_t threshold;
};

/// Malformed fault-corpus line.
class CorpusError : public Error {
public:
    CorpusError(const std::string &message, int line)
        : Error("corpus line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

/// Fault record whose presence condition has no satisfying configuration.
class UnsatisfiablePcError : public Error {
public:
    UnsatisfiablePcError(const std::string &faultId, int line)
        : Error("corpus line " + std::to_string(line) + ": presence condition of fault '" +
                faultId + "' is unsatisfiable"),
          faultId(faultId), line(line) {}
    std::string faultId;
    int line;
};

/// Malformed build-manifest line.
class ManifestError : public Error {
public:
    ManifestError(const std::string &message, int line)
        : Error("manifest line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

} // namespace confsample
