use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("empty code")]
    Empty,
    #[error("code {0:?} must be exactly 2 ASCII alphanumeric characters")]
    BadAuthority(String),
    #[error("kind code {0:?} must be 1 to 4 ASCII alphanumeric characters")]
    BadKind(String),
}

/// Two-letter WIPO ST.3 code, used both for filing/publication authorities
/// and for person country of residence.
///
/// Input is trimmed and uppercased. Codes outside the ST.3 list are kept
/// verbatim; Patstat carries a few non-standard ones.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuthorityCode([u8; 2]);

pub type CountryCode = AuthorityCode;

impl AuthorityCode {
    pub const WO: AuthorityCode = AuthorityCode(*b"WO");

    pub fn new(text: &str) -> Result<Self, CodeError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(CodeError::Empty);
        }
        let bytes = trimmed.as_bytes();
        if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_alphanumeric) {
            return Err(CodeError::BadAuthority(text.to_string()));
        }
        Ok(AuthorityCode([
            bytes[0].to_ascii_uppercase(),
            bytes[1].to_ascii_uppercase(),
        ]))
    }

    pub fn as_str(&self) -> &str {
        // constructed from ASCII only
        std::str::from_utf8(&self.0).expect("ascii code")
    }
}

impl FromStr for AuthorityCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AuthorityCode::new(s)
    }
}

impl fmt::Display for AuthorityCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for AuthorityCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

/// Application or publication kind code ('A', 'W', 'B1', 'D0', ...).
///
/// The set is open; codes are stored uppercased in a fixed 4-byte buffer,
/// zero padded, so ordering matches plain string ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KindCode([u8; 4]);

impl KindCode {
    pub fn new(text: &str) -> Result<Self, CodeError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(CodeError::Empty);
        }
        let bytes = trimmed.as_bytes();
        if bytes.len() > 4 || !bytes.iter().all(u8::is_ascii_alphanumeric) {
            return Err(CodeError::BadKind(text.to_string()));
        }
        let mut buf = [0u8; 4];
        for (slot, b) in buf.iter_mut().zip(bytes) {
            *slot = b.to_ascii_uppercase();
        }
        Ok(KindCode(buf))
    }

    pub fn as_str(&self) -> &str {
        let len = self.0.iter().position(|&b| b == 0).unwrap_or(4);
        std::str::from_utf8(&self.0[..len]).expect("ascii code")
    }
}

impl FromStr for KindCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KindCode::new(s)
    }
}

impl fmt::Display for KindCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for KindCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

/// Shorthand for building codes from literals in fixtures and tests.
pub fn auth(code: &str) -> AuthorityCode {
    AuthorityCode::new(code).unwrap_or_else(|e| panic!("invalid authority literal: {e}"))
}

pub fn kind(code: &str) -> KindCode {
    KindCode::new(code).unwrap_or_else(|e| panic!("invalid kind literal: {e}"))
}
