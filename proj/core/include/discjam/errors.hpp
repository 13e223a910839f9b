#pragma once

#include <stdexcept>
#include <string>

namespace discjam {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateInput : public Error { public: using Error::Error; };
class InvalidArgument : public Error { public: using Error::Error; };
class TuningFailure : public Error { public: using Error::Error; };
class ConstructionFailure : public Error { public: using Error::Error; };
class AssemblyFailure : public Error { public: using Error::Error; };
class OverlapError : public Error { public: using Error::Error; };
class SchemaError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

} // namespace discjam
