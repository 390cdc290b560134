#pragma once

#include <stdexcept>
#include <string>

namespace lzep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateSpinor : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  NotUnimodular(const std::string& what, double defect) : Error(what), defect_(defect) {}
  /// |det(d) - 1| of the rejected input.
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Raised when an eigensystem is requested within the guard window of an
/// exceptional point. Callers should use ep_data() there instead.
class NearExceptionalPoint : public Error {
 public:
  NearExceptionalPoint(const std::string& what, double t_ep) : Error(what), t_ep_(t_ep) {}
  double t_ep() const noexcept { return t_ep_; }

 private:
  double t_ep_;
};

class NoExceptionalPoint : public Error {
 public:
  using Error::Error;
};

class DegenerateNormalization : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double last_good_t)
      : Error(what), last_good_t_(last_good_t) {}
  double last_good_t() const noexcept { return last_good_t_; }

 private:
  double last_good_t_;
};

class AsymptoteNotReached : public Error {
 public:
  AsymptoteNotReached(const std::string& what, double last_change)
      : Error(what), last_change_(last_change) {}
  /// Max-norm column change between the last two span doublings.
  double last_change() const noexcept { return last_change_; }

 private:
  double last_change_;
};

}  // namespace lzep
