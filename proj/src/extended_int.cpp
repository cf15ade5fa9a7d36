#include "ihom/extended_int.hpp"
#include "ihom/errors.hpp"

#include <charconv>

namespace ihom {

std::string ExtInt::to_string() const {
    switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        default: return std::to_string(value_);
    }
}

std::optional<ExtInt> ExtInt::parse(const std::string& s) {
    if (s == "inf" || s == "+inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return ExtInt(v);
}

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonClosedFiltration: return "NonClosedFiltration";
        case ErrorCode::EmptyRegularPart: return "EmptyRegularPart";
        case ErrorCode::InvalidComplex: return "InvalidComplex";
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
        case ErrorCode::SamplingExhausted: return "SamplingExhausted";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::NotMinimal: return "NotMinimal";
        case ErrorCode::CoverNotOpen: return "CoverNotOpen";
        case ErrorCode::NotStratified: return "NotStratified";
        case ErrorCode::NoStabilization: return "NoStabilization";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Error";
}

}  // namespace ihom
