#ifndef CMLJ_ERRORS_HPP
#define CMLJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmlj {

// Exit-status taxonomy used by the CLI:
//   0 success, 2 usage, 3 no-solutions/coverage-gap, 4 ambiguous-match, 5 row-mismatch.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what, int exit_code = 1)
        : std::runtime_error(what), code_(std::move(code)), exit_code_(exit_code) {}
    const std::string& code() const { return code_; }
    int exit_code() const { return exit_code_; }

private:
    std::string code_;
    int exit_code_;
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& w) : Error("PrecisionExhausted", w) {}
};
struct DegreeTooSmall : Error {
    explicit DegreeTooSmall(const std::string& w) : Error("DegreeTooSmall", w, 2) {}
};
struct VariantParityMismatch : Error {
    explicit VariantParityMismatch(const std::string& w) : Error("VariantParityMismatch", w, 2) {}
};
struct SquareVariantForbidden : Error {
    explicit SquareVariantForbidden(const std::string& w) : Error("SquareVariantForbidden", w, 2) {}
};
struct DegenerateSolution : Error {
    explicit DegenerateSolution(const std::string& w) : Error("DegenerateSolution", w) {}
};
struct NoSolutionsFound : Error {
    explicit NoSolutionsFound(const std::string& w) : Error("NoSolutionsFound", w, 3) {}
};
struct CoverageGap : Error {
    explicit CoverageGap(const std::string& w) : Error("CoverageGap", w, 3) {}
};
struct DivergedDuringRefine : Error {
    explicit DivergedDuringRefine(const std::string& w) : Error("DivergedDuringRefine", w) {}
};
struct LambdaDegenerate : Error {
    explicit LambdaDegenerate(const std::string& w) : Error("LambdaDegenerate", w, 2) {}
};
struct DegenerateBranch : Error {
    explicit DegenerateBranch(const std::string& w) : Error("DegenerateBranch", w) {}
};
struct DenominatorZero : Error {
    explicit DenominatorZero(const std::string& w) : Error("DenominatorZero", w) {}
};
struct NotInUpperHalfPlane : Error {
    explicit NotInUpperHalfPlane(const std::string& w) : Error("NotInUpperHalfPlane", w, 2) {}
};
struct AmbiguousMatch : Error {
    explicit AmbiguousMatch(const std::string& w) : Error("AmbiguousMatch", w, 4) {}
};
struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& w) : Error("InsufficientPrecision", w) {}
};
struct RowMismatch : Error {
    explicit RowMismatch(const std::string& w) : Error("RowMismatch", w, 5) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("DomainError", w) {}
};

} // namespace cmlj

#endif
