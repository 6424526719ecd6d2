//! Failure-link automaton recognizing words that avoid a set of factors.

use std::collections::VecDeque;

const NONE: u32 = u32::MAX;

/// Aho–Corasick automaton over letter indices. A state is dead when the input
/// read so far ends with one of the forbidden patterns.
#[derive(Debug, Clone)]
pub struct FactorAutomaton {
    letters: usize,
    goto: Vec<u32>,
    dead: Vec<bool>,
}

impl FactorAutomaton {
    pub fn new<'a, I>(letters: usize, patterns: I) -> Self
    where
        I: IntoIterator<Item = &'a [u16]>,
    {
        let mut goto = vec![NONE; letters];
        let mut dead = vec![false];
        for pat in patterns {
            let mut s = 0usize;
            for &l in pat {
                let slot = s * letters + l as usize;
                if goto[slot] == NONE {
                    goto[slot] = dead.len() as u32;
                    dead.push(false);
                    goto.extend(std::iter::repeat_n(NONE, letters));
                }
                s = goto[slot] as usize;
            }
            dead[s] = true;
        }

        let mut fail = vec![0u32; dead.len()];
        let mut queue = VecDeque::new();
        for slot in goto.iter_mut().take(letters) {
            match *slot {
                NONE => *slot = 0,
                t => {
                    fail[t as usize] = 0;
                    queue.push_back(t as usize);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] |= dead[fail[s] as usize];
            for l in 0..letters {
                let slot = s * letters + l;
                let via_fail = goto[fail[s] as usize * letters + l];
                match goto[slot] {
                    NONE => goto[slot] = via_fail,
                    t => {
                        fail[t as usize] = via_fail;
                        queue.push_back(t as usize);
                    }
                }
            }
        }
        FactorAutomaton {
            letters,
            goto,
            dead,
        }
    }

    pub fn states(&self) -> usize {
        self.dead.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn next(&self, state: usize, letter: u16) -> usize {
        self.goto[state * self.letters + letter as usize] as usize
    }

    pub fn is_dead(&self, state: usize) -> bool {
        self.dead[state]
    }

    /// True iff the word contains none of the patterns.
    pub fn accepts(&self, word: &[u16]) -> bool {
        let mut s = self.start();
        if self.is_dead(s) {
            return false;
        }
        for &l in word {
            s = self.next(s, l);
            if self.is_dead(s) {
                return false;
            }
        }
        true
    }
}
