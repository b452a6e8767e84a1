#include "laughtrack/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>

#include "laughtrack/error.hpp"
#include "laughtrack/lexicon.hpp"
#include "laughtrack/wav.hpp"

namespace laughtrack {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kChunk = 4096;
constexpr const char* kTempMarker = ".tmp-";

[[noreturn]] void io_failure(const std::string& what, const fs::path& p) {
    throw Error("store: " + what + " " + p.string() + ": " + std::strerror(errno));
}

std::string temp_name(const fs::path& path) {
    static std::atomic<unsigned> counter{0};
    return path.filename().string() + kTempMarker + std::to_string(::getpid()) + "-" + std::to_string(counter++);
}

void fsync_dir(const fs::path& dir) {
    int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd < 0) return;
    ::fsync(fd);
    ::close(fd);
}

}  // namespace

void write_atomic(const fs::path& path, std::string_view bytes, const WriteHook& hook) {
    const fs::path temp = path.parent_path() / temp_name(path);
    int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) io_failure("cannot create", temp);
    std::size_t done = 0;
    while (done < bytes.size()) {
        const std::size_t n = std::min(kChunk, bytes.size() - done);
        const ssize_t w = ::write(fd, bytes.data() + done, n);
        if (w < 0) {
            if (errno == EINTR) continue;
            ::close(fd);
            io_failure("cannot write", temp);
        }
        done += static_cast<std::size_t>(w);
        if (hook) hook(temp, done);
    }
    if (::fsync(fd) != 0) {
        ::close(fd);
        io_failure("cannot sync", temp);
    }
    ::close(fd);
    if (::rename(temp.c_str(), path.c_str()) != 0) io_failure("cannot rename onto", path);
    fsync_dir(path.parent_path());
}

SpeechStore::SpeechStore(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
    for (const auto& entry : fs::directory_iterator(root_)) {
        const auto name = entry.path().filename().string();
        if (name.find(kTempMarker) != std::string::npos) {
            // Leftover of an interrupted write; the live file is untouched.
            fs::remove(entry.path());
            ++discarded_;
            continue;
        }
        if (entry.path().extension() != ".json" || name == "index.json") continue;
        auto doc = std::make_shared<SpeechDocument>(deserialize(lexicon::read_file(entry.path())));
        docs_[doc->meta.id] = std::move(doc);
    }
    rewrite_index();
}

void SpeechStore::put(const SpeechDocument& doc, const AudioTrack* audio) {
    auto copy = std::make_shared<SpeechDocument>(doc);
    if (audio) {
        write_atomic(root_ / (doc.meta.id + ".wav"), wav::encode_string(*audio), hook_);
        copy->audio_retained = true;
    } else if (!fs::exists(root_ / (doc.meta.id + ".wav"))) {
        copy->audio_retained = false;
    }
    write_atomic(root_ / (doc.meta.id + ".json"), serialize(*copy), hook_);
    {
        std::unique_lock lock(mu_);
        docs_[copy->meta.id] = std::move(copy);
    }
    rewrite_index();
}

std::shared_ptr<const SpeechDocument> SpeechStore::get(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = docs_.find(id);
    if (it == docs_.end()) throw NotFound("speech '" + id + "' not found");
    return it->second;
}

bool SpeechStore::contains(const std::string& id) const {
    std::shared_lock lock(mu_);
    return docs_.count(id) > 0;
}

std::vector<std::shared_ptr<const SpeechDocument>> SpeechStore::all() const {
    std::shared_lock lock(mu_);
    std::vector<std::shared_ptr<const SpeechDocument>> out;
    for (const auto& [id, doc] : docs_) out.push_back(doc);
    return out;
}

AudioTrack SpeechStore::audio(const std::string& id) const {
    auto doc = get(id);
    const auto path = root_ / (id + ".wav");
    if (!doc->audio_retained || !fs::exists(path)) throw Gone("audio for speech '" + id + "' is not retained");
    return wav::decode(lexicon::read_file(path));
}

std::mutex& SpeechStore::writer(const std::string& id) {
    std::lock_guard lock(writers_mu_);
    auto& slot = writers_[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

void SpeechStore::rewrite_index() {
    std::lock_guard lock(index_mu_);
    Json index = Json::array();
    for (const auto& doc : all())
        index.push_back({{"id", doc->meta.id}, {"version", doc->version}, {"laughter_count", doc->laughter_count()}});
    write_atomic(root_ / "index.json", index.dump(1));
}

}  // namespace laughtrack
