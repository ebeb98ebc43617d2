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

#include "perturbkit/digital.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>

#include <jpeglib.h>

#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  JpegErrorMgr* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  longjmp(mgr->jump, 1);
}

}  // namespace

std::vector<uint8_t> jpeg_encode(const Frame& frame, int quality) {
  frame.validate();
  if (quality < 1 || quality > 100) throw InvalidInput("jpeg quality range");

  jpeg_compress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;

  unsigned char* buffer = nullptr;
  unsigned long buffer_size = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    if (buffer) free(buffer);
    throw IoError(std::string("jpeg encode: ") + err.message);
  }

  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
  cinfo.image_width = static_cast<JDIMENSION>(frame.width);
  cinfo.image_height = static_cast<JDIMENSION>(frame.height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE /* force_baseline */);
  jpeg_start_compress(&cinfo, TRUE);
  const size_t stride = static_cast<size_t>(frame.width) * 3;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(
        &frame.pixels[cinfo.next_scanline * stride]);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);

  std::vector<uint8_t> bytes(buffer, buffer + buffer_size);
  free(buffer);
  return bytes;
}

Frame jpeg_decode(const std::vector<uint8_t>& bytes) {
  if (bytes.empty()) throw InvalidInput("jpeg decode: empty buffer");

  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError(std::string("jpeg decode: ") + err.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  Frame frame;
  frame.width = static_cast<int>(cinfo.output_width);
  frame.height = static_cast<int>(cinfo.output_height);
  frame.pixels.resize(static_cast<size_t>(frame.width) * frame.height * 3);
  const size_t stride = static_cast<size_t>(frame.width) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = &frame.pixels[cinfo.output_scanline * stride];
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return frame;
}

Frame jpeg_roundtrip_frame(const Frame& frame, int quality) {
  return jpeg_decode(jpeg_encode(frame, quality));
}

ClipFrames apply_jpeg(const ClipFrames& clip, Severity severity) {
  clip.validate();
  const int quality =
      static_cast<int>(severity_params("jpeg", severity).at("quality"));
  ClipFrames out;
  out.clip_id = clip.clip_id;
  out.fps = clip.fps;
  out.frames.reserve(clip.frames.size());
  for (const Frame& f : clip.frames) {
    out.frames.push_back(jpeg_roundtrip_frame(f, quality));
  }
  return out;
}

ClipFrames apply_mpeg(const ClipFrames& clip, const std::string& name,
                      Severity severity, const EncoderSpec& encoder) {
  clip.validate();
  if (name != "mpeg1" && name != "mpeg2") {
    throw UnknownPerturbation("unknown mpeg variant: " + name);
  }
  const int level =
      static_cast<int>(severity_params(name, severity).at("level"));
  // The source naming is literal: "mpeg1" compresses with codec mpeg2video
  // and "mpeg2" with codec mpeg4.
  const std::string codec = name == "mpeg1" ? "mpeg2video" : "mpeg4";
  return pipe_through_encoder(clip, codec, level, encoder);
}

}  // namespace perturbkit
