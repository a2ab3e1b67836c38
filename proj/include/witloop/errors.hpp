#ifndef WITLOOP_ERRORS_HPP
#define WITLOOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace witloop
{

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error
{
public:
  using Error::Error;
};

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

class InvalidDimension : public Error
{
public:
  using Error::Error;
};

class InvalidEfficiency : public Error
{
public:
  using Error::Error;
};

class OutOfSpectrumRange : public Error
{
public:
  using Error::Error;
};

class InvalidDecomposition : public Error
{
public:
  using Error::Error;
};

class InfeasibleAllocation : public Error
{
public:
  using Error::Error;
};

class ConstructionFailed : public Error
{
public:
  using Error::Error;
};

class InvalidState : public Error
{
public:
  using Error::Error;
};

}  // namespace witloop

#endif  // WITLOOP_ERRORS_HPP
