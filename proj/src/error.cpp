#include "evx/error.hpp"

namespace evx
{
char const* to_cstring(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::domain:
            return "domain error";
        case ErrorKind::sampling:
            return "sampling error";
        case ErrorKind::aliasing:
            return "aliasing error";
        case ErrorKind::consistency:
            return "consistency error";
        case ErrorKind::ambiguity:
            return "ambiguity error";
        case ErrorKind::measurement:
            return "measurement error";
        case ErrorKind::layout:
            return "layout error";
        case ErrorKind::stability:
            return "stability error";
        case ErrorKind::accuracy:
            return "accuracy error";
        case ErrorKind::undefined:
            return "undefined error";
        case ErrorKind::io:
            return "io error";
        case ErrorKind::validation:
            return "validation error";
    }
    return "error";
}
}  // namespace evx
