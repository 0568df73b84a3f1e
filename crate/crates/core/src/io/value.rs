//! Right-hand sides of `key = value` lines.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// Numeric literal, kept verbatim so integers stay exact.
    Number(String),
    Word(String),
    Text(String),
    List(Vec<Value>),
    Tuple(Vec<Value>),
    Call(String, Vec<Value>),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Number(s) => s.parse().ok(),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Value::Number(s) => s.parse().ok(),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Value::Number(s) => s.parse().ok(),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&str> {
        match self {
            Value::Word(s) | Value::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_items(&self) -> Option<&[Value]> {
        match self {
            Value::List(v) | Value::Tuple(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[Value]) -> fmt::Result {
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
        match self {
            Value::Number(s) | Value::Word(s) => f.write_str(s),
            Value::Text(s) => write!(f, "\"{s}\""),
            Value::List(v) => {
                f.write_str("[")?;
                join(f, v)?;
                f.write_str("]")
            }
            Value::Tuple(v) => {
                f.write_str("(")?;
                join(f, v)?;
                f.write_str(")")
            }
            Value::Call(name, v) => {
                write!(f, "{name}(")?;
                join(f, v)?;
                f.write_str(")")
            }
        }
    }
}

pub fn parse_value(text: &str) -> Result<Value, String> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let v = p.value()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("unexpected trailing input at column {}", p.pos + 1));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn value(&mut self) -> Result<Value, String> {
        self.skip_ws();
        match self.peek() {
            None => Err("missing value".into()),
            Some('[') => {
                self.pos += 1;
                Ok(Value::List(self.items(']')?))
            }
            Some('(') => {
                self.pos += 1;
                Ok(Value::Tuple(self.items(')')?))
            }
            Some('"') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c != '"') {
                    self.pos += 1;
                }
                if self.peek().is_none() {
                    return Err("unterminated string".into());
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                Ok(Value::Text(s))
            }
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+'))
                {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                if s.parse::<f64>().is_err() {
                    return Err(format!("malformed number `{s}`"));
                }
                Ok(Value::Number(s))
            }
            Some(c) if c.is_alphabetic() || c == '_' || c == '/' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| {
                    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '/')
                }) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                if self.peek() == Some('(') {
                    self.pos += 1;
                    return Ok(Value::Call(s, self.items(')')?));
                }
                Ok(Value::Word(s))
            }
            Some(c) => Err(format!("unexpected character `{c}`")),
        }
    }

    fn items(&mut self, close: char) -> Result<Vec<Value>, String> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.value()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(format!("expected `,` or `{close}`")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_values() {
        let v = parse_value("[(1,0,0.5,0.0), (0, 1, 0.0, 0.5)]").unwrap();
        let items = v.as_items().unwrap();
        assert_eq!(items.len(), 2);
        assert_eq!(items[1].as_items().unwrap()[3].as_f64(), Some(0.5));
        let c = parse_value("random(4, 1.0, 7)").unwrap();
        assert_eq!(c.to_string(), "random(4, 1.0, 7)");
        assert_eq!(parse_value("18446744073709551615").unwrap().as_u64(), Some(u64::MAX));
        assert!(parse_value("[1, 2").is_err());
        assert!(parse_value("1 2").is_err());
        assert!(parse_value("1.2.3").is_err());
    }
}
