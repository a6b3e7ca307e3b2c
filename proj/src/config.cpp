#include "mactt/config.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace mactt {

int default_truncation() {
    static const int value = [] {
        const char* env = std::getenv("MACTT_TRUNCATION");
        if (env == nullptr) return kDefaultTruncation;
        std::string_view text(env);
        int parsed = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
        if (ec != std::errc() || ptr != text.data() + text.size() || parsed < 0) return kDefaultTruncation;
        return parsed;
    }();
    return value;
}

}  // namespace mactt
