#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphval {

/// Failure categories raised by the library. Each operation documents which
/// kinds it can produce.
enum class ErrorKind {
  InvalidArgument,
  NotExtendable,
  Unbounded,
  FanNotInsideCone,
  NotToroidal,
  IncompleteFan,
  InfeasibleOrbit,
  RemovedFace,
  MissingRootSystem,
  BoundaryPoint,
  RankDeficient,
  NotConverged,
  ZeroVector,
  NotUnimodular,
  NonGeneric,
  IdenticallyZero,
  SumNotZero,
  DegenerateHull,
  Schema,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotExtendable: return "NotExtendable";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::FanNotInsideCone: return "FanNotInsideCone";
    case ErrorKind::NotToroidal: return "NotToroidal";
    case ErrorKind::IncompleteFan: return "IncompleteFan";
    case ErrorKind::InfeasibleOrbit: return "InfeasibleOrbit";
    case ErrorKind::RemovedFace: return "RemovedFace";
    case ErrorKind::MissingRootSystem: return "MissingRootSystem";
    case ErrorKind::BoundaryPoint: return "BoundaryPoint";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::IdenticallyZero: return "IdenticallyZero";
    case ErrorKind::SumNotZero: return "SumNotZero";
    case ErrorKind::DegenerateHull: return "DegenerateHull";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace sphval
