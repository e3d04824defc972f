#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lingnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ingest
struct MalformedArchive : Error { using Error::Error; };
struct MalformedLine : Error {
    std::size_t line;
    explicit MalformedLine(std::size_t l)
        : Error("malformed JSON at line " + std::to_string(l)), line(l) {}
};
struct MissingField : Error {
    std::size_t line;
    std::string key;
    MissingField(std::size_t l, std::string k)
        : Error("line " + std::to_string(l) + ": missing field \"" + k + "\""), line(l), key(std::move(k)) {}
};

// network
struct EmptyNetwork : Error { EmptyNetwork() : Error("network has no vertices") {} };
struct DegenerateNetwork : Error { using Error::Error; };
struct AlreadyInverted : Error { AlreadyInverted() : Error("network is already a status network") {} };
struct PartitionMismatch : Error { using Error::Error; };

// lexicon
struct MissingResource : Error {
    std::string path;
    explicit MissingResource(std::string p) : Error("missing resource: " + p), path(std::move(p)) {}
};
struct MalformedResource : Error {
    std::string path;
    std::size_t line;
    MalformedResource(std::string p, std::size_t l, const std::string& why = "malformed")
        : Error(p + ":" + std::to_string(l) + ": " + why), path(std::move(p)), line(l) {}
};

// textmetrics / stats / histdiff
struct EmptyCorpus : Error { EmptyCorpus() : Error("corpus has no messages") {} };
struct EmptySample : Error { EmptySample() : Error("empty sample") {} };
struct TooFewRows : Error { TooFewRows() : Error("need at least two rows") {} };
struct DegenerateMatrix : Error { DegenerateMatrix() : Error("every feature is constant") {} };
struct EmptyClass : Error { using Error::Error; };
struct NormalizationMismatch : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

}  // namespace lingnet
