// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mimome {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// A factorization that cannot fail in exact arithmetic did fail.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Selection-gain variance came out clearly negative: the configuration is
/// outside the regime where the large-system moments are meaningful.
class NegativeVariance : public Error {
public:
    using Error::Error;
};

class MissingThreshold : public Error {
public:
    using Error::Error;
};

}  // namespace mimome
