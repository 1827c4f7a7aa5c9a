#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zkai {

using Digest = std::array<uint8_t, 32>;

Digest sha256(std::span<const uint8_t> data);
Digest sha256(std::string_view data);

std::string digest_hex(const Digest& d);
Digest digest_from_hex(std::string_view hex);  // MalformedEncoding on bad input

// Incremental builder for digests over structured data.
class HashWriter {
public:
    void bytes(std::span<const uint8_t> data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
    }
    void str(std::string_view s) {
        buf_.insert(buf_.end(), s.begin(), s.end());
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; i++) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void u8(uint8_t v) { buf_.push_back(v); }

    Digest finish() const { return sha256(std::span<const uint8_t>(buf_)); }

private:
    std::vector<uint8_t> buf_;
};

}  // namespace zkai
