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

#include "perturbkit/frame_store.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>

#include "json.hpp"
#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

using nlohmann::json;

std::string frame_name(size_t index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu%s", index, ext);
  return buf;
}

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

json sidecar_json(const ClipFrames& clip, const StoreMeta& meta) {
  json j;
  j["width"] = clip.width();
  j["height"] = clip.height();
  j["frame_count"] = clip.frame_count();
  j["fps"] = clip.fps.value();
  j["fps_num"] = clip.fps.num;
  j["fps_den"] = clip.fps.den;
  for (const auto& [key, value] : meta) j[key] = value;
  return j;
}

struct SidecarInfo {
  int width = 0;
  int height = 0;
  size_t frame_count = 0;
  Rational fps;
};

SidecarInfo read_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sidecar: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad sidecar " + path.string() + ": " + e.what());
  }
  SidecarInfo info;
  info.width = j.at("width").get<int>();
  info.height = j.at("height").get<int>();
  info.frame_count = j.at("frame_count").get<size_t>();
  if (j.contains("fps_num") && j.contains("fps_den")) {
    info.fps.num = j.at("fps_num").get<int64_t>();
    info.fps.den = j.at("fps_den").get<int64_t>();
  } else {
    // Plain "fps" number: accept integers exactly, else a den-1000 rational.
    const double fps = j.at("fps").get<double>();
    if (fps == std::floor(fps)) {
      info.fps = {static_cast<int64_t>(fps), 1};
    } else {
      info.fps = {static_cast<int64_t>(std::llround(fps * 1000.0)), 1000};
    }
  }
  if (!info.fps.positive()) throw IoError("sidecar fps not positive");
  return info;
}

void write_sidecar(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write sidecar: " + path.string());
  out << j.dump(2) << "\n";
}

std::filesystem::path sidecar_path(const FrameStore& store) {
  if (store.layout == StoreLayout::kPackedRaw) {
    return store.path.string() + ".json";
  }
  return store.path / "meta.json";
}

}  // namespace

StoreLayout store_layout_from_name(const std::string& name) {
  if (name == "frame-dir-png" || name == "png") return StoreLayout::kFrameDirPng;
  if (name == "frame-dir-ppm" || name == "ppm") return StoreLayout::kFrameDirPpm;
  if (name == "packed-raw" || name == "raw") return StoreLayout::kPackedRaw;
  throw InvalidInput("unknown store layout: " + name);
}

std::string store_layout_name(StoreLayout layout) {
  switch (layout) {
    case StoreLayout::kFrameDirPng:
      return "frame-dir-png";
    case StoreLayout::kFrameDirPpm:
      return "frame-dir-ppm";
    case StoreLayout::kPackedRaw:
      return "packed-raw";
  }
  return "?";
}

FrameStore open_store(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    const StoreLayout layout = std::filesystem::exists(path / "000000.ppm")
                                   ? StoreLayout::kFrameDirPpm
                                   : StoreLayout::kFrameDirPng;
    return FrameStore{layout, path};
  }
  if (std::filesystem::is_regular_file(path)) {
    return FrameStore{StoreLayout::kPackedRaw, path};
  }
  throw IoError("no clip store at: " + path.string());
}

void write_png(const Frame& frame, const std::filesystem::path& path) {
  frame.validate();
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot open for write: " + path.string());

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png write failed: " + path.string());
  }
  png_init_io(png, fp.get());
  // Pinned filter and compression settings keep the byte stream a pure
  // function of the pixels.
  png_set_compression_level(png, 6);
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_set_IHDR(png, info, static_cast<png_uint_32>(frame.width),
               static_cast<png_uint_32>(frame.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const size_t stride = static_cast<size_t>(frame.width) * 3;
  for (int y = 0; y < frame.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&frame.pixels[y * stride]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Frame read_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open: " + path.string());

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png read failed: " + path.string());
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  Frame frame;
  frame.width = static_cast<int>(png_get_image_width(png, info));
  frame.height = static_cast<int>(png_get_image_height(png, info));
  if (png_get_channels(png, info) != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png is not RGB after expansion: " + path.string());
  }
  frame.pixels.resize(static_cast<size_t>(frame.width) * frame.height * 3);
  const size_t stride = static_cast<size_t>(frame.width) * 3;
  for (int y = 0; y < frame.height; ++y) {
    png_read_row(png, &frame.pixels[y * stride], nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return frame;
}

void write_ppm(const Frame& frame, const std::filesystem::path& path) {
  frame.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for write: " + path.string());
  out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
  if (!out) throw IoError("short write: " + path.string());
}

Frame read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (magic != "P6" || width <= 0 || height <= 0 || maxval != 255) {
    throw IoError("unsupported ppm: " + path.string());
  }
  in.get();
  Frame frame;
  frame.width = width;
  frame.height = height;
  frame.pixels.resize(static_cast<size_t>(width) * height * 3);
  in.read(reinterpret_cast<char*>(frame.pixels.data()),
          static_cast<std::streamsize>(frame.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(frame.pixels.size())) {
    throw IoError("truncated ppm: " + path.string());
  }
  return frame;
}

void write_clip(const ClipFrames& clip, const FrameStore& store,
                const StoreMeta& meta) {
  clip.validate();
  if (store.layout == StoreLayout::kPackedRaw) {
    std::filesystem::create_directories(store.path.parent_path());
    std::ofstream out(store.path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for write: " + store.path.string());
    for (const Frame& f : clip.frames) {
      out.write(reinterpret_cast<const char*>(f.pixels.data()),
                static_cast<std::streamsize>(f.pixels.size()));
    }
    if (!out) throw IoError("short write: " + store.path.string());
  } else {
    std::filesystem::create_directories(store.path);
    const char* ext = store.layout == StoreLayout::kFrameDirPng ? ".png" : ".ppm";
    for (size_t i = 0; i < clip.frames.size(); ++i) {
      const auto path = store.path / frame_name(i, ext);
      if (store.layout == StoreLayout::kFrameDirPng) {
        write_png(clip.frames[i], path);
      } else {
        write_ppm(clip.frames[i], path);
      }
    }
  }
  write_sidecar(sidecar_path(store), sidecar_json(clip, meta));
}

namespace {

ClipFrames read_window(const FrameStore& store, const std::string& clip_id,
                       size_t begin, size_t end) {
  const SidecarInfo info = read_sidecar(sidecar_path(store));
  if (begin >= info.frame_count) {
    throw InvalidInput("window starts past stored frames (" +
                       std::to_string(begin) + " >= " +
                       std::to_string(info.frame_count) + ")");
  }
  if (end > info.frame_count) {
    std::cerr << "perturbkit: warning: window truncated to " << info.frame_count
              << " stored frames (" << store.path.string() << ")\n";
    end = info.frame_count;
  }

  ClipFrames clip;
  clip.clip_id = clip_id;
  clip.fps = info.fps;
  clip.frames.reserve(end - begin);

  if (store.layout == StoreLayout::kPackedRaw) {
    std::ifstream in(store.path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + store.path.string());
    const size_t frame_bytes = static_cast<size_t>(info.width) * info.height * 3;
    in.seekg(static_cast<std::streamoff>(begin * frame_bytes));
    for (size_t i = begin; i < end; ++i) {
      Frame f;
      f.width = info.width;
      f.height = info.height;
      f.pixels.resize(frame_bytes);
      in.read(reinterpret_cast<char*>(f.pixels.data()),
              static_cast<std::streamsize>(frame_bytes));
      if (in.gcount() != static_cast<std::streamsize>(frame_bytes)) {
        throw IoError("truncated packed store: " + store.path.string());
      }
      clip.frames.push_back(std::move(f));
    }
  } else {
    const char* ext = store.layout == StoreLayout::kFrameDirPng ? ".png" : ".ppm";
    for (size_t i = begin; i < end; ++i) {
      const auto path = store.path / frame_name(i, ext);
      if (!std::filesystem::exists(path)) {
        throw IoError("missing frame file: " + path.string());
      }
      Frame f = store.layout == StoreLayout::kFrameDirPng ? read_png(path)
                                                          : read_ppm(path);
      if (f.width != info.width || f.height != info.height) {
        throw IoError("frame geometry differs from sidecar: " + path.string());
      }
      clip.frames.push_back(std::move(f));
    }
  }
  clip.validate();
  return clip;
}

}  // namespace

ClipFrames read_clip(const FrameStore& store, const std::string& clip_id) {
  const SidecarInfo info = read_sidecar(sidecar_path(store));
  return read_window(store, clip_id, 0, info.frame_count);
}

ClipFrames read_clip(const FrameStore& store, const std::string& clip_id,
                     double start_sec, double end_sec) {
  if (!(start_sec >= 0.0) || !(end_sec > start_sec)) {
    throw InvalidInput("bad clip window [" + std::to_string(start_sec) + ", " +
                       std::to_string(end_sec) + ")");
  }
  const SidecarInfo info = read_sidecar(sidecar_path(store));
  const double fps = info.fps.value();
  const size_t begin = static_cast<size_t>(std::floor(start_sec * fps));
  const size_t end = static_cast<size_t>(std::floor(end_sec * fps));
  if (end == begin) {
    throw InvalidInput("clip window shorter than one frame");
  }
  return read_window(store, clip_id, begin, end);
}

}  // namespace perturbkit
