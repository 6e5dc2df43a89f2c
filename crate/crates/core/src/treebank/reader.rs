use std::io::BufRead;

use super::{NodeLabel, Sentence, Tree, TreebankError};

/// Streaming reader for bracketed trees.
///
/// Trees may be bare (`(IP-MAT ...)`) or wrapped PPCEME-style as
/// `( (IP-MAT ...) (ID file,1.2))`. Input is consumed one top-level tree at a
/// time, so arbitrarily large files can be processed.
pub struct TreeReader<R> {
    reader: R,
    origin: String,
    buf: String,
    /// Absolute byte offset of `buf[0]` in the stream.
    buf_offset: usize,
    /// Resume point for the balance scan.
    scan_pos: usize,
    depth: usize,
    tree_start: Option<usize>,
    ordinal: usize,
    eof: bool,
    failed: bool,
}

impl<R: BufRead> TreeReader<R> {
    /// `origin` names the source in synthesized sentence ids (`origin:ordinal`).
    pub fn new(reader: R, origin: impl Into<String>) -> Self {
        TreeReader {
            reader,
            origin: origin.into(),
            buf: String::new(),
            buf_offset: 0,
            scan_pos: 0,
            depth: 0,
            tree_start: None,
            ordinal: 0,
            eof: false,
            failed: false,
        }
    }

    fn fill(&mut self) -> Result<bool, TreebankError> {
        if self.eof {
            return Ok(false);
        }
        let n = self.reader.read_line(&mut self.buf)?;
        if n == 0 {
            self.eof = true;
        }
        Ok(n > 0)
    }

    fn next_chunk(&mut self) -> Result<Option<(usize, String)>, TreebankError> {
        loop {
            let bytes = self.buf.as_bytes();
            while self.scan_pos < bytes.len() {
                let b = bytes[self.scan_pos];
                match b {
                    b'(' => {
                        if self.depth == 0 {
                            self.tree_start = Some(self.scan_pos);
                        }
                        self.depth += 1;
                    }
                    b')' => {
                        if self.depth == 0 {
                            return Err(TreebankError::Parse {
                                offset: self.buf_offset + self.scan_pos,
                                message: "unmatched ')'".into(),
                            });
                        }
                        self.depth -= 1;
                        if self.depth == 0 {
                            let start = self.tree_start.take().unwrap();
                            let end = self.scan_pos + 1;
                            let chunk = self.buf[start..end].to_string();
                            let abs = self.buf_offset + start;
                            self.buf_offset += end;
                            self.buf.drain(..end);
                            self.scan_pos = 0;
                            return Ok(Some((abs, chunk)));
                        }
                    }
                    b if b.is_ascii_whitespace() => {}
                    _ if self.depth == 0 => {
                        return Err(TreebankError::Parse {
                            offset: self.buf_offset + self.scan_pos,
                            message: "text outside of a bracketed tree".into(),
                        });
                    }
                    _ => {}
                }
                self.scan_pos += 1;
            }
            if self.depth == 0 {
                // Only whitespace buffered; discard it.
                self.buf_offset += self.buf.len();
                self.buf.clear();
                self.scan_pos = 0;
            }
            if !self.fill()? {
                if let Some(start) = self.tree_start {
                    return Err(TreebankError::Parse {
                        offset: self.buf_offset + start,
                        message: "unbalanced parentheses: tree is never closed".into(),
                    });
                }
                return Ok(None);
            }
        }
    }
}

impl<R: BufRead> Iterator for TreeReader<R> {
    type Item = Result<Sentence, TreebankError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let result = self.next_chunk().and_then(|chunk| match chunk {
            None => Ok(None),
            Some((offset, text)) => {
                self.ordinal += 1;
                parse_top_level(&text, offset, &self.origin, self.ordinal).map(Some)
            }
        });
        match result {
            Ok(Some(s)) => Some(Ok(s)),
            Ok(None) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Reads every tree in `source`. Sentences without an ID node get the id
/// `origin:ordinal` (1-based).
pub fn read_trees(source: &str, origin: &str) -> Result<Vec<Sentence>, TreebankError> {
    TreeReader::new(source.as_bytes(), origin).collect()
}

/// Parses a single bracketed tree with no wrapper or ID handling.
pub fn parse_tree(source: &str) -> Result<Tree, TreebankError> {
    let mut sentences = read_trees(source, "-")?;
    match sentences.len() {
        1 => Ok(sentences.pop().unwrap().tree),
        n => Err(TreebankError::Parse {
            offset: 0,
            message: format!("expected exactly one tree, found {}", n),
        }),
    }
}

#[derive(Debug)]
enum Token<'a> {
    Open(usize),
    Close(usize),
    Atom(usize, &'a str),
}

fn lex(text: &str, base: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut atom_start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = atom_start.take() {
                out.push(Token::Atom(base + s, &text[s..i]));
            }
            if c == '(' {
                out.push(Token::Open(base + i));
            } else if c == ')' {
                out.push(Token::Close(base + i));
            }
        } else if atom_start.is_none() {
            atom_start = Some(i);
        }
    }
    if let Some(s) = atom_start {
        out.push(Token::Atom(base + s, &text[s..]));
    }
    out
}

/// A node as read, before wrapper handling: the label is optional.
enum RawNode {
    Labelled(Tree),
    Unlabelled(usize, Vec<Tree>),
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse_node(&mut self, allow_unlabelled: bool) -> Result<RawNode, TreebankError> {
        let open = match self.tokens.get(self.pos) {
            Some(Token::Open(o)) => *o,
            Some(Token::Close(o)) | Some(Token::Atom(o, _)) => {
                return Err(parse_err(*o, "expected '('"));
            }
            None => return Err(parse_err(0, "unexpected end of input")),
        };
        self.pos += 1;

        let label = match self.tokens.get(self.pos) {
            Some(Token::Atom(off, text)) => {
                self.pos += 1;
                Some(NodeLabel::parse(text).map_err(|e| parse_err(*off, &e.to_string()))?)
            }
            Some(Token::Open(_)) => None,
            Some(Token::Close(off)) => return Err(parse_err(*off, "empty node '()'")),
            None => return Err(parse_err(open, "unexpected end of input")),
        };

        match (self.tokens.get(self.pos), label) {
            (Some(Token::Atom(off, word)), Some(pos)) => {
                let (off, word) = (*off, *word);
                self.pos += 1;
                match self.tokens.get(self.pos) {
                    Some(Token::Close(_)) => {
                        self.pos += 1;
                        Ok(RawNode::Labelled(Tree::leaf(pos, word)))
                    }
                    Some(Token::Atom(o, _)) | Some(Token::Open(o)) => Err(parse_err(
                        *o,
                        &format!("leaf ({} {}) has more than one word or mixes words and subtrees", pos, word),
                    )),
                    None => Err(parse_err(off, "unexpected end of input")),
                }
            }
            (Some(Token::Close(off)), Some(pos)) => Err(parse_err(
                *off,
                &format!("leaf ({}) has no word", pos),
            )),
            (Some(Token::Atom(off, _)), None) => Err(parse_err(*off, "unreachable")),
            (Some(Token::Close(off)), None) => Err(parse_err(*off, "empty node '()'")),
            (Some(Token::Open(_)), label) => {
                if label.is_none() && !allow_unlabelled {
                    return Err(parse_err(open, "unlabelled node below the top level"));
                }
                let mut children = Vec::new();
                loop {
                    match self.tokens.get(self.pos) {
                        Some(Token::Close(_)) => {
                            self.pos += 1;
                            break;
                        }
                        Some(Token::Open(_)) => match self.parse_node(false)? {
                            RawNode::Labelled(t) => children.push(t),
                            RawNode::Unlabelled(o, _) => {
                                return Err(parse_err(o, "unlabelled node below the top level"))
                            }
                        },
                        Some(Token::Atom(o, _)) => {
                            return Err(parse_err(*o, "word mixed with subtrees"));
                        }
                        None => return Err(parse_err(open, "unbalanced parentheses")),
                    }
                }
                Ok(match label {
                    Some(l) => RawNode::Labelled(Tree::internal(l, children)),
                    None => RawNode::Unlabelled(open, children),
                })
            }
            (None, _) => Err(parse_err(open, "unexpected end of input")),
        }
    }
}

fn parse_err(offset: usize, message: &str) -> TreebankError {
    TreebankError::Parse {
        offset,
        message: message.to_string(),
    }
}

fn is_id_node(t: &Tree) -> Option<&str> {
    match t {
        Tree::Leaf { pos, word, .. } if pos.raw() == "ID" => Some(word),
        _ => None,
    }
}

fn parse_top_level(
    text: &str,
    offset: usize,
    origin: &str,
    ordinal: usize,
) -> Result<Sentence, TreebankError> {
    let mut parser = Parser {
        tokens: lex(text, offset),
        pos: 0,
    };
    let node = parser.parse_node(true)?;
    if parser.pos != parser.tokens.len() {
        return Err(parse_err(offset, "trailing tokens after tree"));
    }
    let synthesized = || format!("{}:{}", origin, ordinal);
    match node {
        RawNode::Labelled(tree) => Ok(Sentence::new(synthesized(), tree, false)),
        RawNode::Unlabelled(open, children) => {
            let mut id = None;
            let mut content = Vec::new();
            for c in children {
                match is_id_node(&c) {
                    Some(word) if id.is_none() => id = Some(word.to_string()),
                    Some(_) => return Err(parse_err(open, "wrapper has more than one ID node")),
                    None => content.push(c),
                }
            }
            if content.len() != 1 {
                return Err(parse_err(
                    open,
                    &format!("wrapper must contain exactly one tree, found {}", content.len()),
                ));
            }
            let tree = content.pop().unwrap();
            Ok(match id {
                Some(id) => Sentence::new(id, tree, true),
                None => Sentence::new(synthesized(), tree, false),
            })
        }
    }
}
