// Copyright (c) the Perturbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "perturbkit/pipe_codec.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "perturbkit/errors.hpp"
#include "perturbkit/subprocess.hpp"

namespace perturbkit {
namespace {

std::string fps_string(Rational fps) {
  if (fps.den == 1) return std::to_string(fps.num);
  return std::to_string(fps.num) + "/" + std::to_string(fps.den);
}

std::string container_for(const std::string& codec) {
  if (codec == "mpeg4") return "m4v";
  return "mpegvideo";
}

std::string err_snippet(const std::string& err) {
  const size_t limit = 512;
  if (err.size() <= limit) return err;
  return err.substr(err.size() - limit);
}

class TempFile {
 public:
  TempFile() {
    const char* tmpdir = std::getenv("TMPDIR");
    std::string templ =
        std::string(tmpdir && *tmpdir ? tmpdir : "/tmp") + "/perturbkit-XXXXXX";
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    const int fd = mkstemp(buf.data());
    if (fd < 0) throw IoError("mkstemp failed");
    close(fd);
    path_ = buf.data();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

EncoderSpec EncoderSpec::ffmpeg_default() {
  EncoderSpec spec;
  spec.encode_template =
      "ffmpeg -v error -f rawvideo -pix_fmt rgb24 -s {width}x{height} "
      "-r {fps} -i - -c:v {codec} -qscale:v {qscale} -f {format} -y {output}";
  spec.decode_template =
      "ffmpeg -v error -i {input} -f rawvideo -pix_fmt rgb24 -";
  return spec;
}

EncoderSpec EncoderSpec::from_cli(const std::string& value) {
  if (value.empty()) return ffmpeg_default();
  const size_t sep = value.find(";;");
  if (sep != std::string::npos) {
    EncoderSpec spec;
    spec.encode_template = value.substr(0, sep);
    spec.decode_template = value.substr(sep + 2);
    while (!spec.encode_template.empty() && spec.encode_template.back() == ' ')
      spec.encode_template.pop_back();
    while (!spec.decode_template.empty() && spec.decode_template.front() == ' ')
      spec.decode_template.erase(spec.decode_template.begin());
    return spec;
  }
  // Bare program name: reuse the ffmpeg-shaped templates.
  EncoderSpec spec = ffmpeg_default();
  spec.encode_template.replace(0, 6, value);
  spec.decode_template.replace(0, 6, value);
  return spec;
}

std::string expand_template(const std::string& templ,
                            const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(templ.size());
  size_t pos = 0;
  while (pos < templ.size()) {
    const size_t open = templ.find('{', pos);
    if (open == std::string::npos) {
      out.append(templ, pos, std::string::npos);
      break;
    }
    const size_t close = templ.find('}', open);
    if (close == std::string::npos) {
      out.append(templ, pos, std::string::npos);
      break;
    }
    out.append(templ, pos, open - pos);
    const std::string key = templ.substr(open + 1, close - open - 1);
    const auto it = vars.find(key);
    if (it == vars.end()) {
      throw InvalidInput("unknown placeholder {" + key + "} in encoder command");
    }
    out += it->second;
    pos = close + 1;
  }
  return out;
}

ClipFrames pipe_through_encoder(const ClipFrames& clip,
                                const std::string& codec_name, int qscale,
                                const EncoderSpec& spec) {
  clip.validate();
  const size_t frame_bytes =
      static_cast<size_t>(clip.width()) * clip.height() * 3;

  std::string raw;
  raw.reserve(frame_bytes * clip.frame_count());
  for (const Frame& f : clip.frames) {
    raw.append(reinterpret_cast<const char*>(f.pixels.data()),
               f.pixels.size());
  }

  TempFile compressed;
  std::map<std::string, std::string> vars = {
      {"width", std::to_string(clip.width())},
      {"height", std::to_string(clip.height())},
      {"fps", fps_string(clip.fps)},
      {"codec", codec_name},
      {"format", container_for(codec_name)},
      {"qscale", std::to_string(qscale)},
      {"output", compressed.path()},
      {"input", compressed.path()},
  };

  const std::string encode_cmd = expand_template(spec.encode_template, vars);
  SubprocessResult enc = run_subprocess(encode_cmd, raw);
  if (enc.exit_code == 127) {
    throw EncoderMissing("encoder not found: " + encode_cmd);
  }
  if (enc.exit_code != 0) {
    throw EncoderFailed("encode exited " + std::to_string(enc.exit_code) +
                        ": " + err_snippet(enc.err));
  }
  std::error_code ec;
  const auto size = std::filesystem::file_size(compressed.path(), ec);
  if (ec || size == 0) {
    throw EncoderFailed("encoder wrote no output: " + encode_cmd);
  }

  const std::string decode_cmd = expand_template(spec.decode_template, vars);
  SubprocessResult dec = run_subprocess(decode_cmd, std::string());
  if (dec.exit_code == 127) {
    throw EncoderMissing("decoder not found: " + decode_cmd);
  }
  if (dec.exit_code != 0) {
    throw EncoderFailed("decode exited " + std::to_string(dec.exit_code) +
                        ": " + err_snippet(dec.err));
  }
  if (dec.out.empty() || dec.out.size() % frame_bytes != 0) {
    throw EncoderFailed("decoded stream is not a whole number of " +
                        std::to_string(frame_bytes) + " byte frames (got " +
                        std::to_string(dec.out.size()) + " bytes)");
  }

  ClipFrames out;
  out.clip_id = clip.clip_id;
  out.fps = clip.fps;
  const size_t count = dec.out.size() / frame_bytes;
  out.frames.resize(count);
  for (size_t i = 0; i < count; ++i) {
    Frame& f = out.frames[i];
    f.width = clip.width();
    f.height = clip.height();
    f.pixels.assign(dec.out.begin() + static_cast<ptrdiff_t>(i * frame_bytes),
                    dec.out.begin() +
                        static_cast<ptrdiff_t>((i + 1) * frame_bytes));
  }
  return out;
}

}  // namespace perturbkit
