#pragma once

#include <stdexcept>
#include <string>

namespace pvsynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document or missing field. `where` is a JSON-pointer-like path.
class SchemaError : public Error {
 public:
  SchemaError(std::string where, std::string message)
      : Error(where + ": " + message), where_(std::move(where)), message_(std::move(message)) {}
  const std::string& where() const noexcept { return where_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string where_;
  std::string message_;
};

/// A record violated a datasheet invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string record_id, std::string field, const std::string& what)
      : Error(record_id + "." + field + ": " + what),
        record_id_(std::move(record_id)),
        field_(std::move(field)) {}
  const std::string& record_id() const noexcept { return record_id_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string record_id_;
  std::string field_;
};

/// Arithmetic precondition broken by bad data (not an infeasibility).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pvsynth
