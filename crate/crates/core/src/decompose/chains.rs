use serde::Serialize;
use thiserror::Error;

use crate::pure::{compare, DegreeSequence, Relation};
use crate::table::Window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("chain is empty")]
    Empty,
    #[error("elements {0} and {1} are not strictly increasing")]
    NotIncreasing(DegreeSequence, DegreeSequence),
    #[error("{0} does not fit the window ({1})")]
    OutsideWindow(DegreeSequence, Window),
}

/// A strictly increasing list of degree sequences inside a window.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Chain {
    elements: Vec<DegreeSequence>,
    #[serde(skip)]
    window: Window,
    #[serde(skip)]
    maximal: bool,
}

impl Chain {
    pub fn new(elements: Vec<DegreeSequence>, window: Window) -> Result<Self, ChainError> {
        if elements.is_empty() {
            return Err(ChainError::Empty);
        }
        if let Some(e) = elements.iter().find(|e| !e.fits(&window)) {
            return Err(ChainError::OutsideWindow(e.clone(), window));
        }
        if let Some(w) = elements.windows(2).find(|w| compare(&w[0], &w[1]) != Relation::Less) {
            return Err(ChainError::NotIncreasing(w[0].clone(), w[1].clone()));
        }
        let maximal = is_maximal(&elements, &window);
        Ok(Chain { elements, window, maximal })
    }

    /// Uses the smallest window holding every element.
    pub fn from_elements(elements: Vec<DegreeSequence>) -> Result<Self, ChainError> {
        let mut rows = elements.iter().flat_map(|e| e.degrees().iter().enumerate().map(|(i, d)| d - i as i64));
        let first = rows.next().ok_or(ChainError::Empty)?;
        let (min_row, max_row) = rows.fold((first, first), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let max_col = elements.iter().map(DegreeSequence::last_col).max().unwrap_or(0);
        Chain::new(elements, Window { min_row, max_row, max_col })
    }

    pub fn elements(&self) -> &[DegreeSequence] {
        &self.elements
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, d: &DegreeSequence) -> Option<usize> {
        self.elements.iter().position(|e| e == d)
    }

    /// Every element shifted by `shift` (window moves with it).
    pub fn shifted(&self, shift: i64) -> Chain {
        Chain {
            elements: self.elements.iter().map(|e| e.shifted(shift)).collect(),
            window: Window {
                min_row: self.window.min_row + shift,
                max_row: self.window.max_row + shift,
                max_col: self.window.max_col,
            },
            maximal: self.maximal,
        }
    }
}

fn is_maximal(elements: &[DegreeSequence], window: &Window) -> bool {
    let start = DegreeSequence::consecutive(window.min_row, window.max_col + 1);
    let end = DegreeSequence::consecutive(window.max_row, 1);
    elements.first() == Some(&start)
        && elements.last() == Some(&end)
        && elements.windows(2).all(|w| covers(&w[0], window).contains(&w[1]))
}

/// Upper covers of `d` inside `window`: raise one `d_i` by one (keeping strict
/// increase and `d_i ≤ N + i`), or drop the last degree when it sits in the
/// bottom row, `d_s = N + s`. Ordered by increasing `i`, the drop last.
pub fn covers(d: &DegreeSequence, window: &Window) -> Vec<DegreeSequence> {
    let degrees = d.degrees();
    let s = degrees.len() - 1;
    let mut out = Vec::new();
    for i in 0..=s {
        let raised = degrees[i] + 1;
        if raised <= window.max_row + i as i64 && (i == s || raised < degrees[i + 1]) {
            let mut next = degrees.to_vec();
            next[i] = raised;
            out.push(DegreeSequence::new(next).expect("strict increase preserved"));
        }
    }
    if s > 0 && degrees[s] == window.max_row + s as i64 {
        out.push(DegreeSequence::new(degrees[..s].to_vec()).expect("prefix of increasing sequence"));
    }
    out
}

/// Depth-first stream of all maximal chains of `window`, covers explored in
/// the order returned by [`covers`].
pub struct MaximalChains {
    window: Window,
    path: Vec<DegreeSequence>,
    stack: Vec<(Vec<DegreeSequence>, usize)>,
    started: bool,
}

pub fn enumerate_maximal_chains(window: Window) -> MaximalChains {
    MaximalChains { window, path: Vec::new(), stack: Vec::new(), started: false }
}

impl MaximalChains {
    fn emit(&self) -> Chain {
        Chain { elements: self.path.clone(), window: self.window, maximal: true }
    }
}

impl Iterator for MaximalChains {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if !self.started {
            self.started = true;
            let start = DegreeSequence::consecutive(self.window.min_row, self.window.max_col + 1);
            let next = covers(&start, &self.window);
            self.path.push(start);
            if next.is_empty() {
                let chain = self.emit();
                self.path.clear();
                return Some(chain);
            }
            self.stack.push((next, 0));
        }
        while let Some((options, idx)) = self.stack.last_mut() {
            if *idx == options.len() {
                self.stack.pop();
                self.path.pop();
                continue;
            }
            let step = options[*idx].clone();
            *idx += 1;
            let next = covers(&step, &self.window);
            self.path.push(step);
            if next.is_empty() {
                let chain = self.emit();
                self.path.pop();
                return Some(chain);
            }
            self.stack.push((next, 0));
        }
        None
    }
}

/// A maximal chain chosen by walking up covers; `choose(n)` picks an index below `n`.
pub fn random_maximal_chain(window: Window, mut choose: impl FnMut(usize) -> usize) -> Chain {
    let mut current = DegreeSequence::consecutive(window.min_row, window.max_col + 1);
    let mut elements = vec![current.clone()];
    loop {
        let options = covers(&current, &window);
        if options.is_empty() {
            break;
        }
        current = options[choose(options.len()) % options.len()].clone();
        elements.push(current.clone());
    }
    Chain { elements, window, maximal: true }
}
