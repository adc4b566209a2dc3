#pragma once

#include <stdexcept>
#include <string>

namespace ekg {

class EkgError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BlowupError : public EkgError { using EkgError::EkgError; };
class DegenerateConeError : public EkgError { using EkgError::EkgError; };
class NonFiniteError : public EkgError { using EkgError::EkgError; };
class QuadratureError : public EkgError { using EkgError::EkgError; };
class CFLError : public EkgError { using EkgError::EkgError; };
class ConeOutOfRangeError : public EkgError { using EkgError::EkgError; };
class IndexError : public EkgError { using EkgError::EkgError; };
class ConfigError : public EkgError { using EkgError::EkgError; };

} // namespace ekg
