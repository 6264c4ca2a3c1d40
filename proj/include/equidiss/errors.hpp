#pragma once

#include <stdexcept>
#include <string>

namespace equidiss {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class PreconditionFailed : public Error { public: using Error::Error; };
class NotConstrained : public Error { public: using Error::Error; };
class IrrationalCoordinates : public Error { public: using Error::Error; };
class NotColorful : public Error { public: using Error::Error; };
class NoBracket : public Error { public: using Error::Error; };
class SnapFailure : public Error { public: using Error::Error; };
class BudgetExceeded : public Error { public: using Error::Error; };
class NoLegalPointFound : public Error { public: using Error::Error; };

}  // namespace equidiss
