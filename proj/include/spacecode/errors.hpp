#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spacecode {

struct InvalidDistribution : std::runtime_error {
    explicit InvalidDistribution(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidAlphabet : std::runtime_error {
    explicit InvalidAlphabet(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidProbability : std::runtime_error {
    explicit InvalidProbability(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidIndex : std::runtime_error {
    explicit InvalidIndex(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPairing : std::runtime_error {
    explicit InvalidPairing(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidCodebook : std::runtime_error {
    explicit InvalidCodebook(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownSymbol : std::runtime_error {
    explicit UnknownSymbol(const std::string& what) : std::runtime_error(what) {}
};

// Decoder rejection. offset is the 0-based position of the offending
// character; a stream that ends mid-codeword reports offset == stream size.
class MalformedStream : public std::runtime_error {
public:
    MalformedStream(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Search ran past its node budget; carries how far it got.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::uint64_t searched)
        : std::runtime_error("search budget exceeded after " + std::to_string(searched) +
                             " nodes"),
          searched_(searched) {}

    std::uint64_t searched() const noexcept { return searched_; }

private:
    std::uint64_t searched_;
};

}  // namespace spacecode
