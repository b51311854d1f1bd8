#pragma once

#include <stdexcept>
#include <string>

namespace periodkit {

enum class Errc {
  BadParams,
  BadPeriod,
  TooShort,
  InsufficientData,
  LengthMismatch,
  ZeroPowerSignal,
  ZeroNoise,
  ZeroEnergy,
  NotAFactor,
  NoComponents,
  NoDipsFound,
  NoConsistentDips,
  BadConfig,
  IoError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::BadParams: return "BadParams";
    case Errc::BadPeriod: return "BadPeriod";
    case Errc::TooShort: return "TooShort";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroPowerSignal: return "ZeroPowerSignal";
    case Errc::ZeroNoise: return "ZeroNoise";
    case Errc::ZeroEnergy: return "ZeroEnergy";
    case Errc::NotAFactor: return "NotAFactor";
    case Errc::NoComponents: return "NoComponents";
    case Errc::NoDipsFound: return "NoDipsFound";
    case Errc::NoConsistentDips: return "NoConsistentDips";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace periodkit
