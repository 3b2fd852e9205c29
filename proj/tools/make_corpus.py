#!/usr/bin/env python3
# Copyright 2026 The srm-forge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates data/srm_dataset.json, the bundled labeled SRM corpus."""

import json
import sys
from pathlib import Path

RECORDS = []


def add(sig, labels, data_in=None, data_out=None, note=None):
    params = sig[sig.index("(") + 1:-1]
    arity = len(params.split(",")) if params else 0
    if data_in is None:
        data_in = list(range(arity)) if "sink" in labels or "sanitizer" in labels else []
    if data_out is None:
        data_out = "return" if ("source" in labels or "sanitizer" in labels) else "none"
    rec = {"signature": sig, "labels": labels, "dataIn": data_in, "dataOut": data_out, "discovery": "training"}
    if note:
        rec["note"] = note
    RECORDS.append(rec)


WEB = ["cwe78", "cwe79", "cwe89", "cwe601"]

# Sources: untrusted input.
for owner in ["javax.servlet.ServletRequest", "javax.servlet.http.HttpServletRequest"]:
    for m in ["getParameter(String)", "getParameterValues(String)", "getParameterMap()", "getParameterNames()",
              "getInputStream()", "getReader()"]:
        add(f"{owner}.{m}", ["source"] + WEB)
for m in ["getHeader(String)", "getHeaders(String)", "getHeaderNames()", "getQueryString()", "getRequestURI()",
          "getRequestURL()", "getCookies()", "getPathInfo()", "getPathTranslated()", "getServletPath()",
          "getContextPath()", "getRemoteUser()"]:
    add(f"javax.servlet.http.HttpServletRequest.{m}", ["source"] + WEB)
for m in ["getValue()", "getName()", "getComment()", "getDomain()", "getPath()"]:
    add(f"javax.servlet.http.Cookie.{m}", ["source", "cwe79", "cwe89"])
for m in ["getParameter(String)", "getParameterValues(String)", "getHeader(String)", "getParameterMap()"]:
    add(f"org.springframework.web.context.request.WebRequest.{m}", ["source"] + WEB)
for m in ["getQueryParameters()", "getPathParameters()", "getRequestUri()"]:
    add(f"javax.ws.rs.core.UriInfo.{m}", ["source", "cwe79", "cwe89", "cwe601"])
add("javax.ws.rs.core.HttpHeaders.getHeaderString(String)", ["source", "cwe79", "cwe89"])
add("javax.ws.rs.core.HttpHeaders.getRequestHeader(String)", ["source", "cwe79", "cwe89"])
add("java.lang.System.getenv(String)", ["source", "cwe78"])
add("java.lang.System.getenv()", ["source", "cwe78"])
add("java.lang.System.getProperty(String)", ["source", "cwe78"])
add("java.util.Properties.getProperty(String)", ["source"])
add("java.util.Properties.getProperty(String,String)", ["source"])
for m in ["readLine()", "read()", "read(char[])", "read(char[],int,int)"]:
    add(f"java.io.BufferedReader.{m}", ["source"], data_out="return" if m == "readLine()" else {"parameter": 0} if "char" in m else "return")
for m in ["nextLine()", "next()", "nextInt()"]:
    add(f"java.util.Scanner.{m}", ["source"])
add("java.io.InputStream.read(byte[])", ["source"], data_out={"parameter": 0})
add("java.io.InputStream.read(byte[],int,int)", ["source"], data_out={"parameter": 0})
add("java.io.DataInputStream.readUTF()", ["source"])
add("java.io.ObjectInputStream.readObject()", ["source"])
add("java.net.Socket.getInputStream()", ["source", "cwe78", "cwe89"])
add("java.net.URL.openStream()", ["source"])
add("java.net.URLConnection.getInputStream()", ["source"])
add("java.net.URLConnection.getHeaderField(String)", ["source"])
add("java.nio.file.Files.readAllLines(Path)", ["source"])
add("java.nio.file.Files.readAllBytes(Path)", ["source"])
add("java.nio.file.Files.readString(Path)", ["source"])
add("android.content.Intent.getStringExtra(String)", ["source", "cwe79", "cwe89"])
add("android.content.Intent.getExtras()", ["source", "cwe89"])
add("android.content.Intent.getData()", ["source", "cwe601"])
add("android.net.Uri.getQueryParameter(String)", ["source", "cwe79", "cwe89", "cwe601"])
add("android.content.SharedPreferences.getString(String,String)", ["source"])
add("android.widget.EditText.getText()", ["source", "cwe89"])
add("android.database.Cursor.getString(int)", ["source"])
add("android.location.Location.getLatitude()", ["source"])
add("android.location.Location.getLongitude()", ["source"])
add("android.telephony.TelephonyManager.getDeviceId()", ["source"])
add("android.telephony.TelephonyManager.getLine1Number()", ["source"])
add("android.accounts.AccountManager.getAccounts()", ["source"])
add("javax.swing.JTextField.getText()", ["source", "cwe89"])
add("org.apache.commons.fileupload.FileItem.getString()", ["source", "cwe79"])
add("org.apache.commons.fileupload.FileItem.getName()", ["source", "cwe78"])
add("javax.servlet.http.Part.getSubmittedFileName()", ["source", "cwe78"])
add("javax.servlet.http.Part.getInputStream()", ["source"])
add("javax.servlet.http.HttpSession.getAttribute(String)", ["source", "cwe79"])

# SQL sinks.
for m in ["execute(String)", "executeQuery(String)", "executeUpdate(String)", "executeLargeUpdate(String)",
          "addBatch(String)", "execute(String,int)", "executeUpdate(String,int)", "execute(String,String[])"]:
    add(f"java.sql.Statement.{m}", ["sink", "cwe89"], data_in=[0])
for m in ["prepareStatement(String)", "prepareStatement(String,int)", "prepareStatement(String,int,int)",
          "prepareCall(String)", "prepareCall(String,int,int)", "nativeSQL(String)"]:
    add(f"java.sql.Connection.{m}", ["sink", "cwe89"], data_in=[0])
for m in ["query(String,RowMapper)", "queryForObject(String,Class)", "queryForList(String)", "queryForMap(String)",
          "queryForRowSet(String)", "update(String)", "execute(String)", "batchUpdate(String[])",
          "queryForList(String,Class)", "query(String,ResultSetExtractor)"]:
    add(f"org.springframework.jdbc.core.JdbcTemplate.{m}", ["sink", "cwe89"], data_in=[0])
for m in ["createQuery(String)", "createNativeQuery(String)", "createNativeQuery(String,Class)", "createQuery(String,Class)"]:
    add(f"javax.persistence.EntityManager.{m}", ["sink", "cwe89"], data_in=[0])
for m in ["createQuery(String)", "createSQLQuery(String)", "createNativeQuery(String)"]:
    add(f"org.hibernate.Session.{m}", ["sink", "cwe89"], data_in=[0])
for m in ["rawQuery(String,String[])", "execSQL(String)", "execSQL(String,Object[])", "compileStatement(String)"]:
    add(f"android.database.sqlite.SQLiteDatabase.{m}", ["sink", "cwe89"], data_in=[0])
add("org.apache.ibatis.jdbc.SqlRunner.selectAll(String,Object[])", ["sink", "cwe89"], data_in=[0])
add("org.apache.ibatis.jdbc.SqlRunner.update(String,Object[])", ["sink", "cwe89"], data_in=[0])
add("org.apache.ibatis.jdbc.SqlRunner.delete(String,Object[])", ["sink", "cwe89"], data_in=[0])
add("org.apache.ibatis.jdbc.SqlRunner.insert(String,Object[])", ["sink", "cwe89"], data_in=[0])

# Command execution sinks.
for m in ["exec(String)", "exec(String[])", "exec(String,String[])", "exec(String[],String[])",
          "exec(String,String[],File)", "exec(String[],String[],File)"]:
    add(f"java.lang.Runtime.{m}", ["sink", "cwe78"], data_in=[0])
add("java.lang.ProcessBuilder.<init>(String[])", ["sink", "cwe78"])
add("java.lang.ProcessBuilder.<init>(List)", ["sink", "cwe78"])
add("java.lang.ProcessBuilder.command(String[])", ["sink", "cwe78"])
add("java.lang.ProcessBuilder.command(List)", ["sink", "cwe78"])
add("org.apache.commons.exec.CommandLine.parse(String)", ["sink", "cwe78"])
add("org.apache.commons.exec.CommandLine.<init>(String)", ["sink", "cwe78"])
add("org.apache.commons.exec.CommandLine.addArgument(String)", ["sink", "cwe78"])
add("org.apache.commons.exec.DefaultExecutor.execute(CommandLine)", ["sink", "cwe78"])

# Output sinks (cross-site scripting).
for owner in ["java.io.PrintWriter", "javax.servlet.jsp.JspWriter", "javax.servlet.ServletOutputStream"]:
    for m in ["print(String)", "println(String)", "print(Object)", "println(Object)"]:
        add(f"{owner}.{m}", ["sink", "cwe79"], data_in=[0])
for m in ["write(String)", "write(String,int,int)", "write(char[])", "append(CharSequence)", "format(String,Object[])",
          "printf(String,Object[])"]:
    add(f"java.io.PrintWriter.{m}", ["sink", "cwe79"], data_in=[0])
add("java.io.Writer.write(String)", ["sink", "cwe79"], data_in=[0])
add("javax.servlet.jsp.JspWriter.write(String)", ["sink", "cwe79"], data_in=[0])
add("android.webkit.WebView.loadData(String,String,String)", ["sink", "cwe79"], data_in=[0])
add("android.webkit.WebView.loadDataWithBaseURL(String,String,String,String,String)", ["sink", "cwe79"], data_in=[1])
add("android.webkit.WebView.evaluateJavascript(String,ValueCallback)", ["sink", "cwe79"], data_in=[0])
add("org.springframework.web.servlet.ModelAndView.addObject(String,Object)", ["sink", "cwe79"], data_in=[1])
add("org.springframework.ui.Model.addAttribute(String,Object)", ["sink", "cwe79"], data_in=[1])
add("javax.servlet.http.HttpSession.setAttribute(String,Object)", ["sink", "cwe79"], data_in=[1])

# Redirect sinks.
add("javax.servlet.http.HttpServletResponse.sendRedirect(String)", ["sink", "cwe601"])
add("javax.servlet.http.HttpServletResponse.setHeader(String,String)", ["sink", "cwe601"], data_in=[1])
add("javax.servlet.http.HttpServletResponse.addHeader(String,String)", ["sink", "cwe601"], data_in=[1])
add("javax.servlet.http.HttpServletResponse.encodeRedirectURL(String)", ["sink", "cwe601"])
add("javax.servlet.ServletRequest.getRequestDispatcher(String)", ["sink", "cwe601"])
add("org.springframework.web.servlet.view.RedirectView.<init>(String)", ["sink", "cwe601"])
add("org.springframework.web.servlet.view.RedirectView.setUrl(String)", ["sink", "cwe601"])
add("org.springframework.web.servlet.ModelAndView.<init>(String)", ["sink", "cwe601"])
add("org.springframework.web.servlet.ModelAndView.setViewName(String)", ["sink", "cwe601"])
add("javax.ws.rs.core.Response.seeOther(URI)", ["sink", "cwe601"])
add("javax.ws.rs.core.Response.temporaryRedirect(URI)", ["sink", "cwe601"])
add("android.webkit.WebView.loadUrl(String)", ["sink", "cwe601", "cwe79"])
add("android.content.Context.startActivity(Intent)", ["sink", "cwe601"])

# Generic sinks without a CWE in the taxonomy (logging, files, network).
add("android.util.Log.d(String,String)", ["sink"], data_in=[1])
add("android.util.Log.i(String,String)", ["sink"], data_in=[1])
add("android.util.Log.e(String,String)", ["sink"], data_in=[1])
add("android.telephony.SmsManager.sendTextMessage(String,String,String,PendingIntent,PendingIntent)", ["sink"], data_in=[2])
add("java.io.FileOutputStream.write(byte[])", ["sink"])
add("java.io.OutputStream.write(byte[])", ["sink"])
add("java.net.Socket.getOutputStream()", ["sink"], data_in=[])
add("java.io.File.<init>(String)", ["sink"])
add("java.io.FileInputStream.<init>(String)", ["sink"])
add("java.io.FileReader.<init>(String)", ["sink"])
add("java.nio.file.Paths.get(String,String[])", ["sink"], data_in=[0])
add("java.lang.Class.forName(String)", ["sink"])
add("java.lang.reflect.Method.invoke(Object,Object[])", ["sink"])
add("javax.naming.directory.DirContext.search(String,String,SearchControls)", ["sink"], data_in=[1])
add("javax.xml.xpath.XPath.evaluate(String,Object)", ["sink"], data_in=[0])
add("javax.script.ScriptEngine.eval(String)", ["sink", "cwe78"])

# Sanitizers.
ENC = "org.owasp.esapi.Encoder"
add(f"{ENC}.encodeForSQL(Codec,String)", ["sanitizer", "cwe89"], data_in=[1])
add(f"{ENC}.encodeForOS(Codec,String)", ["sanitizer", "cwe78"], data_in=[1])
for m in ["encodeForHTML(String)", "encodeForHTMLAttribute(String)", "encodeForJavaScript(String)", "encodeForCSS(String)",
          "encodeForVBScript(String)", "encodeForXML(String)", "encodeForXMLAttribute(String)"]:
    add(f"{ENC}.{m}", ["sanitizer", "cwe79"])
add(f"{ENC}.encodeForURL(String)", ["sanitizer", "cwe601", "cwe79"])
add(f"{ENC}.encodeForLDAP(String)", ["sanitizer"])
add(f"{ENC}.encodeForXPath(String)", ["sanitizer"])
add(f"{ENC}.canonicalize(String)", ["sanitizer"])
VAL = "org.owasp.esapi.Validator"
add(f"{VAL}.getValidInput(String,String,String,int,boolean)", ["sanitizer", "cwe79", "cwe89"], data_in=[1])
add(f"{VAL}.getValidSafeHTML(String,String,int,boolean)", ["sanitizer", "cwe79"], data_in=[1])
add(f"{VAL}.getValidRedirectLocation(String,String,boolean)", ["sanitizer", "cwe601"], data_in=[1])
add(f"{VAL}.getValidFileName(String,String,List,boolean)", ["sanitizer", "cwe78"], data_in=[1])
add(f"{VAL}.getValidDirectoryPath(String,String,File,boolean)", ["sanitizer", "cwe78"], data_in=[1])
add(f"{VAL}.isValidInput(String,String,String,int,boolean)", ["sanitizer", "cwe89"], data_in=[1], data_out="none")
for owner in ["org.apache.commons.lang.StringEscapeUtils", "org.apache.commons.lang3.StringEscapeUtils",
              "org.apache.commons.text.StringEscapeUtils"]:
    for m in ["escapeHtml4(String)", "escapeEcmaScript(String)", "escapeXml10(String)"]:
        add(f"{owner}.{m}", ["sanitizer", "cwe79"])
add("org.apache.commons.lang.StringEscapeUtils.escapeSql(String)", ["sanitizer", "cwe89"])
add("org.apache.commons.lang.StringEscapeUtils.escapeHtml(String)", ["sanitizer", "cwe79"])
for m in ["forHtml(String)", "forHtmlAttribute(String)", "forHtmlContent(String)", "forJavaScript(String)",
          "forCssString(String)", "forXml(String)"]:
    add(f"org.owasp.encoder.Encode.{m}", ["sanitizer", "cwe79"])
add("org.owasp.encoder.Encode.forUriComponent(String)", ["sanitizer", "cwe601", "cwe79"])
add("org.owasp.encoder.Encode.forUri(String)", ["sanitizer", "cwe601"])
add("org.springframework.web.util.HtmlUtils.htmlEscape(String)", ["sanitizer", "cwe79"])
add("org.springframework.web.util.JavaScriptUtils.javaScriptEscape(String)", ["sanitizer", "cwe79"])
add("org.springframework.web.util.UriUtils.encode(String,String)", ["sanitizer", "cwe601"], data_in=[0])
add("org.jsoup.Jsoup.clean(String,Whitelist)", ["sanitizer", "cwe79"], data_in=[0])
add("org.jsoup.Jsoup.clean(String,Safelist)", ["sanitizer", "cwe79"], data_in=[0])
add("org.owasp.html.PolicyFactory.sanitize(String)", ["sanitizer", "cwe79"])
add("java.net.URLEncoder.encode(String,String)", ["sanitizer", "cwe601", "cwe79"], data_in=[0])
add("java.net.URLEncoder.encode(String)", ["sanitizer", "cwe601", "cwe79"])
add("org.apache.commons.io.FilenameUtils.getName(String)", ["sanitizer", "cwe78"])
add("org.apache.commons.io.FilenameUtils.normalize(String)", ["sanitizer", "cwe78"])
add("java.sql.PreparedStatement.setString(int,String)", ["sanitizer", "cwe89"], data_in=[1], data_out="none")
add("com.google.common.html.HtmlEscapers.htmlEscaper()", ["sanitizer", "cwe79"], data_in=[])
add("com.google.common.escape.Escaper.escape(String)", ["sanitizer", "cwe79"])
add("org.apache.commons.validator.routines.UrlValidator.isValid(String)", ["sanitizer", "cwe601"], data_out="none")
add("java.lang.Integer.parseInt(String)", ["sanitizer", "cwe89", "cwe78"])
add("java.lang.Long.parseLong(String)", ["sanitizer", "cwe89", "cwe78"])
add("java.util.UUID.fromString(String)", ["sanitizer", "cwe89"])

# Authentication and authorization checks.
add("javax.servlet.http.HttpServletRequest.login(String,String)", ["sanitizer", "cwe306"], data_out="none")
add("javax.servlet.http.HttpServletRequest.authenticate(HttpServletResponse)", ["sanitizer", "cwe306"], data_out="none")
add("javax.servlet.http.HttpServletRequest.logout()", ["cwe306"], note="ends a session; no flow role")
add("javax.servlet.http.HttpServletRequest.getUserPrincipal()", ["source", "cwe306"])
add("javax.servlet.http.HttpServletRequest.isUserInRole(String)", ["sanitizer", "cwe862", "cwe863"], data_out="none")
add("javax.servlet.http.HttpSession.invalidate()", ["cwe306"], note="ends a session; no flow role")
add("org.springframework.security.authentication.AuthenticationManager.authenticate(Authentication)",
    ["sanitizer", "cwe306"])
add("org.springframework.security.core.context.SecurityContextHolder.getContext()", ["source", "cwe306", "cwe862"])
add("org.springframework.security.core.context.SecurityContext.getAuthentication()", ["source", "cwe306", "cwe862"])
add("org.springframework.security.core.Authentication.getAuthorities()", ["source", "cwe862", "cwe863"])
add("org.springframework.security.core.Authentication.isAuthenticated()", ["cwe306"], note="state query")
add("org.springframework.security.access.AccessDecisionManager.decide(Authentication,Object,Collection)",
    ["sanitizer", "cwe862", "cwe863"], data_out="none")
add("java.security.AccessController.checkPermission(Permission)", ["sanitizer", "cwe862"], data_out="none")
add("java.lang.SecurityManager.checkPermission(Permission)", ["sanitizer", "cwe862"], data_out="none")
add("javax.security.auth.login.LoginContext.login()", ["sanitizer", "cwe306"], data_out="none")
add("javax.security.auth.Subject.doAs(Subject,PrivilegedAction)", ["cwe863"])
add("org.apache.shiro.subject.Subject.login(AuthenticationToken)", ["sanitizer", "cwe306"], data_out="none")
add("org.apache.shiro.subject.Subject.isPermitted(String)", ["sanitizer", "cwe862", "cwe863"], data_out="none")
add("org.apache.shiro.subject.Subject.hasRole(String)", ["sanitizer", "cwe862", "cwe863"], data_out="none")
add("org.apache.shiro.subject.Subject.checkRole(String)", ["sanitizer", "cwe863"], data_out="none")
add("org.apache.shiro.subject.Subject.isAuthenticated()", ["cwe306"], note="state query")
add("org.apache.shiro.SecurityUtils.getSubject()", ["source", "cwe306"])
add("java.security.MessageDigest.digest(byte[])", ["sanitizer"])
add("javax.crypto.Cipher.doFinal(byte[])", ["sanitizer"])

# Methods that are not security relevant.
NON = {
    "java.lang.String": ["length()", "isEmpty()", "charAt(int)", "substring(int)", "substring(int,int)", "trim()",
                         "toLowerCase()", "toUpperCase()", "indexOf(String)", "startsWith(String)", "endsWith(String)",
                         "equals(Object)", "hashCode()", "split(String)", "concat(String)", "contains(CharSequence)",
                         "replace(CharSequence,CharSequence)", "valueOf(int)", "valueOf(Object)", "format(String,Object[])",
                         "join(CharSequence,Iterable)", "compareTo(String)", "toCharArray()", "intern()"],
    "java.lang.StringBuilder": ["append(String)", "append(int)", "toString()", "length()", "reverse()", "insert(int,String)",
                                "setLength(int)", "<init>()", "<init>(String)"],
    "java.util.List": ["add(Object)", "get(int)", "size()", "remove(int)", "contains(Object)", "clear()", "isEmpty()",
                       "iterator()", "addAll(Collection)", "indexOf(Object)", "set(int,Object)"],
    "java.util.Map": ["get(Object)", "put(Object,Object)", "containsKey(Object)", "remove(Object)", "keySet()", "values()",
                      "entrySet()", "size()", "getOrDefault(Object,Object)"],
    "java.util.Set": ["add(Object)", "contains(Object)", "size()", "remove(Object)"],
    "java.lang.Math": ["max(int,int)", "min(int,int)", "abs(int)", "sqrt(double)", "pow(double,double)", "floor(double)",
                       "round(double)", "random()"],
    "java.util.Collections": ["sort(List)", "emptyList()", "unmodifiableList(List)", "reverse(List)", "singletonList(Object)"],
    "java.util.Arrays": ["asList(Object[])", "sort(int[])", "copyOf(int[],int)", "fill(int[],int)", "toString(int[])"],
    "java.lang.Object": ["toString()", "equals(Object)", "hashCode()", "getClass()", "notify()", "wait()"],
    "java.lang.Integer": ["valueOf(int)", "intValue()", "toString(int)", "compare(int,int)", "bitCount(int)"],
    "java.util.logging.Logger": ["getLogger(String)", "setLevel(Level)", "isLoggable(Level)"],
    "java.lang.Thread": ["sleep(long)", "start()", "join()", "currentThread()", "interrupt()", "getName()"],
    "java.time.LocalDate": ["now()", "of(int,int,int)", "plusDays(long)", "getYear()", "isBefore(ChronoLocalDate)"],
    "java.util.Optional": ["of(Object)", "empty()", "isPresent()", "orElse(Object)", "map(Function)"],
    "java.util.Iterator": ["hasNext()", "next()", "remove()"],
    "java.util.concurrent.ExecutorService": ["shutdown()", "submit(Callable)", "awaitTermination(long,TimeUnit)"],
    "java.util.concurrent.atomic.AtomicInteger": ["incrementAndGet()", "get()", "set(int)", "compareAndSet(int,int)"],
    "java.util.Objects": ["requireNonNull(Object)", "equals(Object,Object)", "hash(Object[])", "isNull(Object)"],
    "java.util.stream.Stream": ["filter(Predicate)", "map(Function)", "collect(Collector)", "count()", "sorted()"],
    "java.util.Random": ["nextInt(int)", "nextDouble()", "<init>(long)"],
    "java.lang.Boolean": ["parseBoolean(String)", "booleanValue()"],
    "java.text.SimpleDateFormat": ["<init>(String)", "setLenient(boolean)"],
    "java.math.BigDecimal": ["add(BigDecimal)", "multiply(BigDecimal)", "setScale(int,RoundingMode)", "compareTo(BigDecimal)"],
    "java.util.ArrayList": ["<init>()", "<init>(int)", "ensureCapacity(int)", "trimToSize()"],
    "java.util.HashMap": ["<init>()", "<init>(int)"],
    "android.view.View": ["setVisibility(int)", "getId()", "setOnClickListener(OnClickListener)", "invalidate()"],
    "android.widget.TextView": ["setTextSize(float)", "setGravity(int)"],
    "javax.swing.JButton": ["<init>(String)", "setEnabled(boolean)", "addActionListener(ActionListener)"],
}
for owner, methods in NON.items():
    for m in methods:
        add(f"{owner}.{m}", [])


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "srm_dataset.json"
    sigs = [r["signature"] for r in RECORDS]
    dupes = sorted({s for s in sigs if sigs.count(s) > 1})
    if dupes:
        raise SystemExit(f"duplicate signatures: {dupes}")
    doc = {"version": "1", "methods": sorted(RECORDS, key=lambda r: r["signature"])}
    out.write_text(json.dumps(doc, indent=2) + "\n")
    srm = sum(1 for r in RECORDS if r["labels"])
    print(f"{len(RECORDS)} records ({srm} SRMs, {len(RECORDS) - srm} non-SRMs) -> {out}")


if __name__ == "__main__":
    main()
