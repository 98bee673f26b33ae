#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordweight {

using WordId = std::uint32_t;

/// Dense word <-> id mapping. The three reserved markers are always present
/// with fixed ids.
class Vocabulary {
public:
    static constexpr WordId kUnk = 0;
    static constexpr WordId kBos = 1;
    static constexpr WordId kEos = 2;

    static constexpr std::string_view kUnkToken = "<unk>";
    static constexpr std::string_view kBosToken = "<s>";
    static constexpr std::string_view kEosToken = "</s>";

    Vocabulary();

    /// Returns the id of `word`, adding it if absent.
    WordId intern(std::string_view word);

    std::optional<WordId> find(std::string_view word) const;

    /// Like find(), but maps unknown words to kUnk.
    WordId lookup(std::string_view word) const {
        return find(word).value_or(kUnk);
    }

    const std::string& word(WordId id) const { return words_.at(id); }
    std::span<const std::string> words() const { return words_; }
    std::size_t size() const noexcept { return words_.size(); }

private:
    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::string> words_;
    std::unordered_map<std::string, WordId, StringHash, std::equal_to<>> ids_;
};

}  // namespace wordweight
