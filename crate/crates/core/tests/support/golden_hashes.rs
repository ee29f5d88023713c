// Pinned FNV-1a 64 hashes of the 45 golden PNGs. Regenerate with the
// ignored test print_golden_hashes after an intentional rendering change.
const GOLDEN_PNG_HASHES: [(&str, u64); 45] = [
    ("fixture_a/circular/gray", 0x4a3955cfc3045cd3),
    ("fixture_a/circular/uniform", 0x8e43ec44ecebbe45),
    ("fixture_a/circular/random", 0x842c2ee4df42e203),
    ("fixture_a/spiral/gray", 0x79ccb5c3001c99ff),
    ("fixture_a/spiral/uniform", 0x336e45d4a76c8620),
    ("fixture_a/spiral/random", 0x66a9128032989489),
    ("fixture_a/random/gray", 0xa1dd50de24a08360),
    ("fixture_a/random/uniform", 0xf99e1290d82ed4c5),
    ("fixture_a/random/random", 0xf44ba66240fcef95),
    ("fixture_b/circular/gray", 0x54ef35245b27c2aa),
    ("fixture_b/circular/uniform", 0x93c646a4bf71ea70),
    ("fixture_b/circular/random", 0x1d5f1d9812381a36),
    ("fixture_b/spiral/gray", 0xd3b9068cbd2febce),
    ("fixture_b/spiral/uniform", 0x61bb25a9e39612a1),
    ("fixture_b/spiral/random", 0x3c37c79ffac22749),
    ("fixture_b/random/gray", 0xd7a8cd283ac574ee),
    ("fixture_b/random/uniform", 0xc70fd3f88927ab1e),
    ("fixture_b/random/random", 0x1ea08bbabd4b34f5),
    ("c6/circular/gray", 0x51e2fe508a06fb8a),
    ("c6/circular/uniform", 0x7b251ad5e655877b),
    ("c6/circular/random", 0x7c78de028fc7b00a),
    ("c6/spiral/gray", 0x419e7919e7870117),
    ("c6/spiral/uniform", 0xaef4214dbdaddcc9),
    ("c6/spiral/random", 0x32b032af2b8de1d8),
    ("c6/random/gray", 0xd9abf79c141a3f4c),
    ("c6/random/uniform", 0x94ec7af87afa3ee5),
    ("c6/random/random", 0xb6178dbe192b55b8),
    ("k5/circular/gray", 0xe34996540d12da87),
    ("k5/circular/uniform", 0xae66c7bc3917b4a8),
    ("k5/circular/random", 0xb58924d9b4b63188),
    ("k5/spiral/gray", 0xe34f69d5f7b51dcd),
    ("k5/spiral/uniform", 0xc1bd714b09a32a77),
    ("k5/spiral/random", 0x07195a8b861c75a3),
    ("k5/random/gray", 0xa873697583dc4980),
    ("k5/random/uniform", 0x48810ae5ea7f64c4),
    ("k5/random/random", 0x1c9ca378d8aaa515),
    ("petersen/circular/gray", 0x453c6493a6e081cc),
    ("petersen/circular/uniform", 0x0facbcf4329de6ad),
    ("petersen/circular/random", 0xe9ce541a4bd3b477),
    ("petersen/spiral/gray", 0xd5a37ce26ca061fc),
    ("petersen/spiral/uniform", 0x506855786490b10b),
    ("petersen/spiral/random", 0x114ea85c3df35650),
    ("petersen/random/gray", 0xa78cfa057cbd4998),
    ("petersen/random/uniform", 0xd01bfe0df51eea2e),
    ("petersen/random/random", 0x67ce354d8bb2d6dd),
];
