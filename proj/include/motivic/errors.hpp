#ifndef MOTIVIC_ERRORS_HPP
#define MOTIVIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace motivic
{

// Root of every error raised by the library. Each failure mode named by the
// operations has its own subclass so callers can dispatch on type.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define MOTIVIC_DECLARE_ERROR(name)                                                                                    \
    class name : public Error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        explicit name(const std::string &what) : Error(#name ": " + what) {}                                          \
    }

MOTIVIC_DECLARE_ERROR(NotAUnit);
MOTIVIC_DECLARE_ERROR(ZeroBase);
MOTIVIC_DECLARE_ERROR(NonUnitDenominator);
MOTIVIC_DECLARE_ERROR(NonUnitConstantTerm);
MOTIVIC_DECLARE_ERROR(PoleAtOne);
MOTIVIC_DECLARE_ERROR(InadmissibleMap);
MOTIVIC_DECLARE_ERROR(SingularDiagonal);
MOTIVIC_DECLARE_ERROR(Unsupported);
MOTIVIC_DECLARE_ERROR(WindowTooSmall);
MOTIVIC_DECLARE_ERROR(NoStabilization);
MOTIVIC_DECLARE_ERROR(ParseError);
MOTIVIC_DECLARE_ERROR(InvalidArgument);
// A quotient that should land in Z[L, 1/L] did not divide exactly.
MOTIVIC_DECLARE_ERROR(InexactDivision);

#undef MOTIVIC_DECLARE_ERROR

} // namespace motivic

#endif
