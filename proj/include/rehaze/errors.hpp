#ifndef REHAZE_ERRORS_HPP
#define REHAZE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rehaze {

/// Out-of-domain scalar, non-finite pixel, bad window size, and so on.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands whose spatial dimensions do not agree.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Depth map without dynamic range under min-max normalization.
class DegenerateDepth : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rehaze

#endif  // REHAZE_ERRORS_HPP
