#pragma once

#include <stdexcept>
#include <string>

namespace zkai {

// Base class for all toolkit errors. Every domain error below carries a
// distinct type so callers and tests can match on the specific failure.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- field / polynomial / group ---
class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};
class DuplicateEvaluationPoint : public Error {
public:
    explicit DuplicateEvaluationPoint(const std::string& what) : Error(what) {}
};
class EngineMismatch : public Error {
public:
    explicit EngineMismatch(const std::string& what) : Error(what) {}
};

// --- data pipeline ---
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::string column)
        : Error(what), row(row), column(std::move(column)) {}
    std::size_t row;     // 1-based file line (header is line 1)
    std::string column;
};
class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error(what) {}
};
class ZeroVariance : public Error {
public:
    explicit ZeroVariance(const std::string& what) : Error(what) {}
};
class ZeroRange : public Error {
public:
    explicit ZeroRange(const std::string& what) : Error(what) {}
};

// --- model ---
class SingularDesign : public Error {
public:
    explicit SingularDesign(const std::string& what) : Error(what) {}
};
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};
class QuantizationOverflow : public Error {
public:
    explicit QuantizationOverflow(const std::string& what) : Error(what) {}
};

// --- snark ---
class InvalidAccumulator : public Error {
public:
    explicit InvalidAccumulator(const std::string& what) : Error(what) {}
};
class DegreeOverflow : public Error {
public:
    explicit DegreeOverflow(const std::string& what) : Error(what) {}
};
class UnsatisfiedWitness : public Error {
public:
    explicit UnsatisfiedWitness(const std::string& what) : Error(what) {}
};
class TrapdoorUnavailable : public Error {
public:
    explicit TrapdoorUnavailable(const std::string& what) : Error(what) {}
};
class MalformedProof : public Error {
public:
    explicit MalformedProof(const std::string& what) : Error(what) {}
};
class MalformedEncoding : public Error {
public:
    explicit MalformedEncoding(const std::string& what) : Error(what) {}
};

// --- oracle network / ledger ---
class InsufficientLink : public Error {
public:
    explicit InsufficientLink(const std::string& what) : Error(what) {}
};
class UnknownVerifier : public Error {
public:
    explicit UnknownVerifier(const std::string& what) : Error(what) {}
};
class QuorumFailure : public Error {
public:
    explicit QuorumFailure(const std::string& what) : Error(what) {}
};
class FetchError : public Error {
public:
    explicit FetchError(const std::string& what) : Error(what) {}
};
class UnknownSubscription : public Error {
public:
    explicit UnknownSubscription(const std::string& what) : Error(what) {}
};

// --- reporting ---
class NothingToReport : public Error {
public:
    explicit NothingToReport(const std::string& what) : Error(what) {}
};

}  // namespace zkai
