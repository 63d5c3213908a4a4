#pragma once

#include <stdexcept>
#include <string>

namespace evx
{
enum class ErrorKind
{
    domain,
    sampling,
    aliasing,
    consistency,
    ambiguity,
    measurement,
    layout,
    stability,
    accuracy,
    undefined,
    io,
    validation,
};

char const* to_cstring(ErrorKind kind);

/*!
 * Exception carrying a category used for CLI diagnostics and exit codes.
 */
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const& what)
{
    throw Error(kind, what);
}

}  // namespace evx
