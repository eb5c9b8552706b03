//! A small HTTP/1.1 service: `POST /<operation>` with a JSON body returns
//! the same payload the CLI prints with `--json`. One thread per
//! connection; every request is independent.

use std::io::{self, BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::thread;
use std::time::Duration;

use serde_json::{json, Value};

use crate::ops::{dispatch, OPERATIONS};
use crate::wire::{to_line, ApiError};

/// Largest request body accepted.
pub const MAX_BODY: usize = 16 << 20;

const MAX_HEADER_LINES: usize = 100;

/// A parsed request.
#[derive(Debug)]
pub struct Request {
    pub method: String,
    pub path: String,
    pub body: Vec<u8>,
}

/// Status and JSON body of a response.
pub fn handle(method: &str, path: &str, body: &[u8]) -> (u16, Value) {
    let op = path.trim_start_matches('/');
    match (method, op) {
        ("GET", "health") => (200, json!({ "ok": true })),
        ("GET", "operations") => (200, json!({ "operations": OPERATIONS })),
        ("POST", op) if OPERATIONS.contains(&op) => {
            let req: Value = if body.iter().all(u8::is_ascii_whitespace) {
                json!({})
            } else {
                match serde_json::from_slice(body) {
                    Ok(v) => v,
                    Err(e) => {
                        let err = ApiError::parse(format!("invalid JSON body: {e}"));
                        return (err.http_status(), err.to_json());
                    }
                }
            };
            match dispatch(op, &req) {
                Ok(v) => (200, v),
                Err(e) => (e.http_status(), e.to_json()),
            }
        }
        (_, op) if OPERATIONS.contains(&op) || op == "health" || op == "operations" => {
            let err = ApiError { code: 2, kind: "method", message: format!("{method} is not allowed on {path}") };
            (405, err.to_json())
        }
        _ => {
            let err = ApiError { code: 2, kind: "not_found", message: format!("no endpoint {path}") };
            (404, err.to_json())
        }
    }
}

fn reason(status: u16) -> &'static str {
    match status {
        200 => "OK",
        400 => "Bad Request",
        404 => "Not Found",
        405 => "Method Not Allowed",
        413 => "Payload Too Large",
        422 => "Unprocessable Entity",
        _ => "Error",
    }
}

/// Reads one request from `stream`.
pub fn read_request(stream: &mut impl Read) -> io::Result<Result<Request, (u16, ApiError)>> {
    let mut reader = BufReader::new(stream);
    let mut first = String::new();
    if reader.read_line(&mut first)? == 0 {
        return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "empty request"));
    }
    let bad = |m: &str| Ok(Err((400, ApiError::parse(m.to_string()))));
    let mut parts = first.split_whitespace();
    let (Some(method), Some(target)) = (parts.next(), parts.next()) else {
        return bad("malformed request line");
    };
    let path = target.split('?').next().unwrap_or(target).to_string();
    let method = method.to_string();
    let mut length = 0usize;
    for _ in 0..MAX_HEADER_LINES {
        let mut line = String::new();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        let line = line.trim_end();
        if line.is_empty() {
            let mut body = vec![0; length];
            reader.read_exact(&mut body)?;
            return Ok(Ok(Request { method, path, body }));
        }
        if let Some((name, value)) = line.split_once(':') {
            if name.trim().eq_ignore_ascii_case("content-length") {
                length = match value.trim().parse() {
                    Ok(n) => n,
                    Err(_) => return bad("bad Content-Length"),
                };
                if length > MAX_BODY {
                    return Ok(Err((413, ApiError::parse(format!("body exceeds {MAX_BODY} bytes")))));
                }
            }
        }
    }
    bad("too many or unterminated headers")
}

fn write_response(stream: &mut impl Write, status: u16, body: &Value) -> io::Result<()> {
    let text = to_line(body);
    write!(
        stream,
        "HTTP/1.1 {status} {}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{text}",
        reason(status),
        text.len()
    )?;
    stream.flush()
}

fn serve_connection(mut stream: TcpStream) -> io::Result<()> {
    stream.set_read_timeout(Some(Duration::from_secs(30)))?;
    let (status, body) = match read_request(&mut stream)? {
        Ok(req) => handle(&req.method, &req.path, &req.body),
        Err((status, err)) => (status, err.to_json()),
    };
    write_response(&mut stream, status, &body)
}

/// Accepts connections forever, one thread each.
pub fn serve(listener: TcpListener) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        thread::spawn(move || {
            if let Err(e) = serve_connection(stream) {
                eprintln!("connection error: {e}");
            }
        });
    }
    Ok(())
}
