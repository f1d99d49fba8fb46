//! Hash-derived random streams.
//!
//! A [`RandomStream`] names a position in a tree of independent generators:
//! the master seed is the root and every [`Label`] appended to the path
//! selects a child. The generator handed out by [`RandomStream::rng`] depends
//! only on `(master_seed, path)`, so work can be split across threads in any
//! way without changing a single drawn value.

use std::borrow::Cow;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator type produced by every stream.
pub type StreamRng = ChaCha8Rng;

/// One element of a stream path.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Label {
    /// Role tag such as `"h_AB"` or `"noise_B"`.
    Tag(Cow<'static, str>),
    /// Trial, antenna, band or slot index.
    Index(u64),
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Tag(t) => write!(f, "{t}"),
            Label::Index(i) => write!(f, "#{i}"),
        }
    }
}

impl From<&'static str> for Label {
    fn from(tag: &'static str) -> Self {
        Label::Tag(Cow::Borrowed(tag))
    }
}

impl From<String> for Label {
    fn from(tag: String) -> Self {
        Label::Tag(Cow::Owned(tag))
    }
}

macro_rules! index_label {
    ($($t:ty),*) => {$(
        impl From<$t> for Label {
            fn from(i: $t) -> Self {
                Label::Index(i as u64)
            }
        }
    )*};
}
index_label!(u8, u16, u32, u64, usize);

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const TAG_DOMAIN: u64 = 0xA076_1D64_78BD_642F;
const INDEX_DOMAIN: u64 = 0xE703_7ED1_A0B4_28DB;

/// SplitMix64 finaliser.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xCBF2_9CE4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

impl Label {
    fn code(&self) -> u64 {
        match self {
            Label::Tag(t) => mix64(fnv1a(t.as_bytes()) ^ TAG_DOMAIN),
            Label::Index(i) => mix64(i ^ INDEX_DOMAIN),
        }
    }
}

/// Deterministic source of randomness addressed by `(master_seed, path)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RandomStream {
    master_seed: u64,
    path: Vec<Label>,
    digest: u64,
}

impl RandomStream {
    pub fn new(master_seed: u64) -> Self {
        Self {
            master_seed,
            path: Vec::new(),
            digest: mix64(master_seed ^ 0x5851_F42D_4C95_7F2D),
        }
    }

    /// Sub-stream one level below `self`.
    pub fn child(&self, label: impl Into<Label>) -> Self {
        let label = label.into();
        let digest = mix64(self.digest.rotate_left(23) ^ label.code());
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.extend_from_slice(&self.path);
        path.push(label);
        Self {
            master_seed: self.master_seed,
            path,
            digest,
        }
    }

    /// Shorthand for a chain of [`child`](Self::child) calls.
    pub fn descend<L: Into<Label>>(&self, labels: impl IntoIterator<Item = L>) -> Self {
        labels.into_iter().fold(self.clone(), |s, l| s.child(l))
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn path(&self) -> &[Label] {
        &self.path
    }

    /// Fresh generator positioned at the start of this stream's sequence.
    pub fn rng(&self) -> StreamRng {
        StreamRng::seed_from_u64(self.digest)
    }

    /// Same generator as `self.child(label).rng()`, without building the path.
    pub fn child_rng(&self, label: impl Into<Label>) -> StreamRng {
        let digest = mix64(self.digest.rotate_left(23) ^ label.into().code());
        StreamRng::seed_from_u64(digest)
    }
}

impl fmt::Debug for RandomStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RandomStream({}:{:?})", self.master_seed, self.path)
    }
}
