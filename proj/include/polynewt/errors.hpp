// Exception types shared by the solver library and the benchmark CLI.
#pragma once

#include <stdexcept>
#include <string>

namespace polynewt {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class DegreeTooLow : public Error {
public:
  using Error::Error;
};

class NonfiniteCoefficient : public Error {
public:
  using Error::Error;
};

class NoNonlinearTerm : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
public:
  using Error::Error;
};

class InvalidDensity : public Error {
public:
  using Error::Error;
};

class InvalidViscosity : public Error {
public:
  using Error::Error;
};

class BadParam : public Error {
public:
  using Error::Error;
};

class UnknownProblem : public Error {
public:
  using Error::Error;
};

class BadProblemFile : public Error {
public:
  using Error::Error;
};

class WriteFailure : public Error {
public:
  using Error::Error;
};

}  // namespace polynewt
