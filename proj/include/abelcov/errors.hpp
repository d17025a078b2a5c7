#pragma once

#include <stdexcept>
#include <string>

namespace abelcov {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (bit strings, class strings, config files).
class InputError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A class that had to be halved in Pic has an odd coordinate.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// Some L_chi came out as the zero class.
class TrivialityError : public Error {
 public:
  using Error::Error;
};

/// Building data failed validation where valid data was required.
class InvalidBuildingData : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class NegativeIrregularity : public Error {
 public:
  using Error::Error;
};

class NegativeGenus : public Error {
 public:
  using Error::Error;
};

class UnsupportedRamification : public Error {
 public:
  using Error::Error;
};

class DegenerateCanonical : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace abelcov
