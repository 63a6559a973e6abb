#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "partref/rational.hh"

namespace partref {

// Canonical byte encoding shared by type values, split keys and oracle
// signatures. Integers are big-endian; signed values have the sign bit
// flipped so byte order agrees with numeric order for integers.
// Variable-length parts carry a 32-bit length prefix.
class ByteWriter {
public:
    ByteWriter& u8(std::uint8_t v) {
        out_.push_back(static_cast<char>(v));
        return *this;
    }
    ByteWriter& u32(std::uint32_t v) {
        for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<char>((v >> shift) & 0xff));
        return *this;
    }
    ByteWriter& u64(std::uint64_t v) {
        for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<char>((v >> shift) & 0xff));
        return *this;
    }
    ByteWriter& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << 63)); }
    ByteWriter& rational(const Rational& r) { return i64(r.num()).i64(r.den()); }
    ByteWriter& bytes(std::string_view b) {
        u32(static_cast<std::uint32_t>(b.size()));
        out_.append(b);
        return *this;
    }
    ByteWriter& raw(std::string_view b) {
        out_.append(b);
        return *this;
    }

    std::string& str() { return out_; }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

// Printable rendering of a byte string, for diagnostics only.
std::string hex_dump(std::string_view bytes);

}  // namespace partref
