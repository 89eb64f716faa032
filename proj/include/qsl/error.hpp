#ifndef QSL_ERROR_HPP
#define QSL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qsl {

// Base class for all recoverable failures. Input validation problems derive
// from ValidationError so the CLI can map them to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

#define QSL_DEFINE_ERROR(Name, Base)                                   \
    class Name : public Base {                                         \
    public:                                                            \
        explicit Name(const std::string& msg) : Base(msg) {}           \
    }

QSL_DEFINE_ERROR(NotHermitian, ValidationError);
QSL_DEFINE_ERROR(NotPSD, ValidationError);
QSL_DEFINE_ERROR(TraceNotOne, ValidationError);
QSL_DEFINE_ERROR(DimensionMismatch, ValidationError);
QSL_DEFINE_ERROR(RankMismatch, ValidationError);
QSL_DEFINE_ERROR(NotIsospectral, ValidationError);
QSL_DEFINE_ERROR(NotPure, ValidationError);
QSL_DEFINE_ERROR(NotProjector, ValidationError);
QSL_DEFINE_ERROR(SingularGram, ValidationError);
QSL_DEFINE_ERROR(RankTooLarge, ValidationError);
QSL_DEFINE_ERROR(NotInvolution, ValidationError);
QSL_DEFINE_ERROR(Degenerate, ValidationError);
QSL_DEFINE_ERROR(NotHorizontal, ValidationError);
QSL_DEFINE_ERROR(NonpositiveUncertainty, ValidationError);
QSL_DEFINE_ERROR(EmptyTrajectory, ValidationError);
QSL_DEFINE_ERROR(ParseError, ValidationError);
QSL_DEFINE_ERROR(NoConvergence, Error);

#undef QSL_DEFINE_ERROR

} // namespace qsl

#endif
