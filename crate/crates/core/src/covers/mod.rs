//! Shortest and all covers of a string.

mod afi;
mod folk;
mod moore_smyth;
mod online;

use serde::Serialize;

use crate::text::Text;

pub use afi::shortest_cover_afi;
pub use folk::shortest_cover_folk;
pub use moore_smyth::{all_covers_ms, BufferMode};
pub use online::{shortest_cover_online, OnlineCover};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverAlgorithm {
    Folk,
    Afi,
    Bres,
    Ms,
    MsStatic,
}

impl CoverAlgorithm {
    pub const ALL: [CoverAlgorithm; 5] = [
        CoverAlgorithm::Folk,
        CoverAlgorithm::Afi,
        CoverAlgorithm::Bres,
        CoverAlgorithm::Ms,
        CoverAlgorithm::MsStatic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoverAlgorithm::Folk => "folk",
            CoverAlgorithm::Afi => "afi",
            CoverAlgorithm::Bres => "bres",
            CoverAlgorithm::Ms => "ms",
            CoverAlgorithm::MsStatic => "ms-static",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    pub fn run(self, t: &Text) -> CoverReport {
        match self {
            CoverAlgorithm::Folk => CoverReport::shortest(shortest_cover_folk(t)),
            CoverAlgorithm::Afi => CoverReport::shortest(shortest_cover_afi(t)),
            CoverAlgorithm::Bres => {
                let c = shortest_cover_online(t.iter().copied());
                CoverReport {
                    shortest_len: *c.last().expect("nonempty text"),
                    all_cover_lens: None,
                    online_shortest: Some(c),
                }
            }
            CoverAlgorithm::Ms | CoverAlgorithm::MsStatic => {
                let mode = if self == CoverAlgorithm::Ms {
                    BufferMode::Growable
                } else {
                    BufferMode::Preallocated
                };
                let all = all_covers_ms(t, mode);
                CoverReport {
                    shortest_len: all[0],
                    all_cover_lens: Some(all),
                    online_shortest: None,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub shortest_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_cover_lens: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub online_shortest: Option<Vec<usize>>,
}

impl CoverReport {
    fn shortest(len: usize) -> Self {
        CoverReport {
            shortest_len: len,
            all_cover_lens: None,
            online_shortest: None,
        }
    }
}
