#ifndef QOMP_ERRORS_HPP
#define QOMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qomp
{

enum class ErrorCode {
    ParseError,
    RankDeficient,
    NotSublattice,
    EmptyGenerators,
    NotSimplicial,
    InvalidSubstitution,
    NotCharacteristic,
    NotMonotone,
    NotNormalized,
    InvalidInput,
    InternalInconsistency,
    NonPolynomialCoefficient,
    NotStabilized,
    BudgetExceeded,
};

inline const char *error_code_name(ErrorCode c)
{
    switch (c) {
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::RankDeficient:
            return "RankDeficient";
        case ErrorCode::NotSublattice:
            return "NotSublattice";
        case ErrorCode::EmptyGenerators:
            return "EmptyGenerators";
        case ErrorCode::NotSimplicial:
            return "NotSimplicial";
        case ErrorCode::InvalidSubstitution:
            return "InvalidSubstitution";
        case ErrorCode::NotCharacteristic:
            return "NotCharacteristic";
        case ErrorCode::NotMonotone:
            return "NotMonotone";
        case ErrorCode::NotNormalized:
            return "NotNormalized";
        case ErrorCode::InvalidInput:
            return "InvalidInput";
        case ErrorCode::InternalInconsistency:
            return "InternalInconsistency";
        case ErrorCode::NonPolynomialCoefficient:
            return "NonPolynomialCoefficient";
        case ErrorCode::NotStabilized:
            return "NotStabilized";
        case ErrorCode::BudgetExceeded:
            return "BudgetExceeded";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it onto an exit status without string matching.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), m_code(code), m_detail(what)
    {
    }
    ErrorCode code() const noexcept
    {
        return m_code;
    }
    /// Message without the code prefix.
    const std::string &detail() const noexcept
    {
        return m_detail;
    }

private:
    ErrorCode m_code;
    std::string m_detail;
};

} // namespace qomp

#endif
