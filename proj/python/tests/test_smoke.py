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

import numpy as np
import pytest

import perturbkit as pk


def test_registry_cardinality():
    assert len(pk.video_perturbations()) == 18
    text = pk.text_perturbations()
    assert len(text) == 35
    assert sum(1 for _, _, kind in text if kind == "builtin") == 31
    assert sum(1 for _, _, kind in text if kind == "plugin") == 4


def test_severity_params():
    assert pk.severity_params("gaussian", 3) == {"sigma": 0.18}
    with pytest.raises(pk.PerturbkitError):
        pk.severity_params("gaussian", 6)


def test_perturb_clip_deterministic():
    rng = np.random.default_rng(7)
    clip = rng.integers(0, 256, size=(4, 24, 32, 3), dtype=np.uint8)
    seed = pk.derive_seed(0, "c0", "gaussian", 3)
    a = pk.perturb_clip(clip, "Noise/gaussian:3", seed=seed)
    b = pk.perturb_clip(clip, "Noise/gaussian:3", seed=seed)
    c = pk.perturb_clip(clip, "Noise/gaussian:3", seed=seed + 1)
    assert a.shape == clip.shape
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_perturb_caption_golden():
    out = pk.perturb_caption("a little girl does gymnastics", "DropText/NoNN")
    assert out == "a little [UNK] does [UNK]"
    swapped = pk.perturb_caption("a little girl does gymnastics",
                                 "Bias/GenderSwap")
    assert swapped == "a little boy does gymnastics"


def test_text_similarity_identity():
    scores = pk.text_similarity("a b c d", "a b c d")
    assert scores["bleu4"] == pytest.approx(1.0)
    assert scores["rouge_l_f1"] == pytest.approx(1.0)
    assert scores["meteor_lite"] == pytest.approx(1.0)


def test_recall_and_robustness():
    scores = np.eye(3)
    ids = ["a", "b", "c"]
    pairing = {i: i for i in ids}
    assert pk.recall_at_k(scores, ids, ids, pairing, 1) == 100.0
    gamma = pk.robustness(30.0, 33.0)
    assert gamma["gamma_abs"] == pytest.approx(1.03)
    assert gamma["gamma_rel"] == pytest.approx(1.1)


def test_psnr():
    a = np.zeros((8, 8, 3), dtype=np.uint8)
    assert np.isinf(pk.psnr(a, a))
    b = np.full((8, 8, 3), 255, dtype=np.uint8)
    assert pk.psnr(a, b) == pytest.approx(0.0)


def test_emb1_round_trip(tmp_path):
    path = str(tmp_path / "x.emb1")
    vectors = np.arange(12, dtype=np.float32).reshape(3, 4)
    pk.write_emb1(path, vectors, ["u", "v", "w"])
    back, ids = pk.read_emb1(path)
    assert ids == ["u", "v", "w"]
    assert np.array_equal(back, vectors)
