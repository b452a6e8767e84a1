#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "laughtrack/document.hpp"

namespace laughtrack {

// Called while a file is being written, after each chunk reaches the
// temporary file. Tests use it to die mid-write.
using WriteHook = std::function<void(const std::filesystem::path& temp, std::size_t bytes_written)>;

// Writes `bytes` to a sibling temporary, fsyncs it, renames it over `path`
// and fsyncs the directory.
void write_atomic(const std::filesystem::path& path, std::string_view bytes, const WriteHook& hook = {});

// One `<id>.json` per speech plus `<id>.wav` when audio is retained, under a
// root directory. `index.json` is rebuilt from a directory scan at open and
// rewritten after every put. Readers get immutable snapshots; writers to one
// id are serialized.
class SpeechStore {
public:
    explicit SpeechStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    // Audio is written before the document, so a visible document never
    // points at missing audio.
    void put(const SpeechDocument& doc, const AudioTrack* audio = nullptr);

    // NotFound when absent.
    std::shared_ptr<const SpeechDocument> get(const std::string& id) const;
    bool contains(const std::string& id) const;
    std::vector<std::shared_ptr<const SpeechDocument>> all() const;  // id order

    // Gone when the speech exists but its audio was not retained.
    AudioTrack audio(const std::string& id) const;

    // Serializes read-modify-write cycles (recompute) on one speech.
    std::mutex& writer(const std::string& id);

    void set_write_hook(WriteHook hook) { hook_ = std::move(hook); }

    // Temporary files found (and removed) by the last scan.
    std::size_t discarded_temporaries() const { return discarded_; }

private:
    void rewrite_index();

    std::filesystem::path root_;
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<const SpeechDocument>> docs_;
    std::mutex writers_mu_;
    std::map<std::string, std::unique_ptr<std::mutex>> writers_;
    std::mutex index_mu_;
    WriteHook hook_;
    std::size_t discarded_ = 0;
};

}  // namespace laughtrack
