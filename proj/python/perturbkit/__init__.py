# Copyright (c) the Perturbkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python surface of the perturbkit engine.

The heavy lifting lives in the compiled ``_perturbkit`` extension; this
package re-exports its operations under stable names.
"""

try:
    from . import _perturbkit as _impl
except ImportError:  # extension built outside the package directory
    import _perturbkit as _impl

PerturbkitError = _impl.PerturbkitError
derive_seed = _impl.derive_seed
perturb_caption = _impl.perturb_caption
perturb_clip = _impl.perturb_clip
psnr = _impl.psnr
read_emb1 = _impl.read_emb1
recall_at_k = _impl.recall_at_k
robustness = _impl.robustness
severity_params = _impl.severity_params
text_perturbations = _impl.text_perturbations
text_similarity = _impl.text_similarity
video_perturbations = _impl.video_perturbations
write_emb1 = _impl.write_emb1

__all__ = [
    "PerturbkitError",
    "derive_seed",
    "perturb_caption",
    "perturb_clip",
    "psnr",
    "read_emb1",
    "recall_at_k",
    "robustness",
    "severity_params",
    "text_perturbations",
    "text_similarity",
    "video_perturbations",
    "write_emb1",
]
