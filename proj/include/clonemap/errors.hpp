// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_ERRORS_HPP
#define CLONEMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clonemap {

/// Input rejected by a precondition check (bad thresholds, empty artifact, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A region or id outside the corpus.
class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace clonemap

#endif
