#ifndef MOULDCALC_ERRORS_HPP
#define MOULDCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mouldcalc {

// Base class for every error thrown by the library. The `code()` string is
// stable and is what the CLI prints and the tests match on.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define MOULDCALC_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    }

MOULDCALC_DEFINE_ERROR(DivisionByZero);
MOULDCALC_DEFINE_ERROR(RankDeficient);
MOULDCALC_DEFINE_ERROR(RangeExceeded);
MOULDCALC_DEFINE_ERROR(AlphabetMismatch);
MOULDCALC_DEFINE_ERROR(NotInvertible);
MOULDCALC_DEFINE_ERROR(BadConstantTerm);
MOULDCALC_DEFINE_ERROR(NotAlternal);
MOULDCALC_DEFINE_ERROR(GaugeNotAdmissible);
MOULDCALC_DEFINE_ERROR(UnknownLetter);
MOULDCALC_DEFINE_ERROR(OrderViolation);
MOULDCALC_DEFINE_ERROR(NotResonant);
MOULDCALC_DEFINE_ERROR(UnsupportedBackend);
MOULDCALC_DEFINE_ERROR(NonDiagonalLinearPart);
MOULDCALC_DEFINE_ERROR(RealnessViolation);
MOULDCALC_DEFINE_ERROR(NonDiagonalX0);
MOULDCALC_DEFINE_ERROR(TooLong);
MOULDCALC_DEFINE_ERROR(ResonantAmbiguity);
MOULDCALC_DEFINE_ERROR(DegenerateSpectrum);
MOULDCALC_DEFINE_ERROR(SchemaError);

#undef MOULDCALC_DEFINE_ERROR

} // namespace mouldcalc

#endif
