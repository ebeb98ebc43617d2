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
//
// pk-rawcodec: a minimal encoder/decoder speaking the same command-line
// dialect the default ffmpeg templates use, so mpeg1/mpeg2 perturbation runs
// work on machines without ffmpeg (--encoder-cmd pk-rawcodec).
//
//   encode: pk-rawcodec ... -s WxH -i - -c:v CODEC -qscale:v Q -f FMT -y OUT
//     reads raw RGB24 frames on stdin, applies a quantizer-strength lossy
//     transform, writes a PKV1 container to OUT.
//   decode: pk-rawcodec ... -i IN -f rawvideo -pix_fmt rgb24 -
//     reads a PKV1 container from IN, writes raw RGB24 frames to stdout.
//
// The "compression" quantizes each byte to steps of max(2, qscale/2), which
// degrades monotonically with qscale; it makes no attempt at rate saving.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

constexpr char kMagic[4] = {'P', 'K', 'V', '1'};

void write_u32_le(std::FILE* f, uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v & 0xff),
      static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff),
  };
  std::fwrite(b, 1, 4, f);
}

bool read_u32_le(std::FILE* f, uint32_t* v) {
  unsigned char b[4];
  if (std::fread(b, 1, 4, f) != 4) return false;
  *v = static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
       static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
  return true;
}

std::vector<uint8_t> read_all(std::FILE* f) {
  std::vector<uint8_t> data;
  uint8_t buf[1 << 16];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) {
    data.insert(data.end(), buf, buf + n);
  }
  return data;
}

int fail(const std::string& msg) {
  std::fprintf(stderr, "pk-rawcodec: %s\n", msg.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string input;
  std::string output;
  std::string codec = "rawvideo";
  std::string size;
  int qscale = 2;
  bool stdout_sink = false;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) return "";
      return argv[++i];
    };
    if (arg == "-i") {
      input = next();
    } else if (arg == "-y") {
      output = next();
    } else if (arg == "-c:v") {
      codec = next();
    } else if (arg == "-qscale:v" || arg == "-q:v") {
      qscale = std::atoi(next().c_str());
    } else if (arg == "-s") {
      size = next();
    } else if (arg == "-v" || arg == "-r" || arg == "-pix_fmt" || arg == "-f") {
      next();  // accepted, unused
    } else if (arg == "-") {
      stdout_sink = true;
    } else if (!arg.empty() && arg[0] == '-') {
      return fail("unknown flag: " + arg);
    } else {
      return fail("unexpected argument: " + arg);
    }
  }
  if (input.empty()) return fail("missing -i");

  if (input == "-") {
    // Encode: stdin RGB24 -> PKV1 container.
    if (output.empty()) return fail("encode needs -y OUTPUT");
    unsigned width = 0, height = 0;
    if (std::sscanf(size.c_str(), "%ux%u", &width, &height) != 2 ||
        width == 0 || height == 0) {
      return fail("encode needs -s WxH, got \"" + size + "\"");
    }
    std::vector<uint8_t> raw = read_all(stdin);
    const size_t frame_bytes = static_cast<size_t>(width) * height * 3;
    if (raw.empty() || raw.size() % frame_bytes != 0) {
      return fail("stdin is not a whole number of " +
                  std::to_string(frame_bytes) + "-byte frames");
    }
    const unsigned step =
        qscale / 2 < 2 ? 2 : static_cast<unsigned>(qscale / 2);
    for (uint8_t& v : raw) {
      const unsigned q = ((v + step / 2) / step) * step;
      v = static_cast<uint8_t>(q > 255 ? 255 : q);
    }
    std::FILE* out = std::fopen(output.c_str(), "wb");
    if (out == nullptr) return fail("cannot write " + output);
    std::fwrite(kMagic, 1, 4, out);
    write_u32_le(out, width);
    write_u32_le(out, height);
    write_u32_le(out, static_cast<uint32_t>(raw.size() / frame_bytes));
    write_u32_le(out, static_cast<uint32_t>(qscale));
    std::fwrite(raw.data(), 1, raw.size(), out);
    const bool ok = std::fflush(out) == 0 && std::ferror(out) == 0;
    std::fclose(out);
    return ok ? 0 : fail("short write to " + output);
  }

  // Decode: PKV1 container -> stdout RGB24.
  if (!stdout_sink) return fail("decode writes to stdout; pass a trailing -");
  std::FILE* in = std::fopen(input.c_str(), "rb");
  if (in == nullptr) return fail("cannot read " + input);
  char magic[4];
  if (std::fread(magic, 1, 4, in) != 4 ||
      std::memcmp(magic, kMagic, 4) != 0) {
    std::fclose(in);
    return fail(input + " is not a PKV1 container");
  }
  uint32_t width, height, frames, stored_qscale;
  if (!read_u32_le(in, &width) || !read_u32_le(in, &height) ||
      !read_u32_le(in, &frames) || !read_u32_le(in, &stored_qscale)) {
    std::fclose(in);
    return fail("truncated PKV1 header");
  }
  const std::vector<uint8_t> payload = read_all(in);
  std::fclose(in);
  const size_t expect = static_cast<size_t>(width) * height * 3 * frames;
  if (payload.size() != expect) return fail("truncated PKV1 payload");
  std::fwrite(payload.data(), 1, payload.size(), stdout);
  return std::fflush(stdout) == 0 ? 0 : fail("short write to stdout");
}
